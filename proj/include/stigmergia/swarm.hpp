#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stigmergia/rng.hpp"
#include "stigmergia/shape_features.hpp"

namespace stigmergia::swarm {

struct Params {
    double k1 = 0.1;             // drop-threshold constant
    double k2 = 0.3;             // pick-threshold constant
    double evap_K = 0.015;       // per-step multiplicative pheromone decay
    double eta = 0.07;           // constant deposit per ant per step
    double deposit_a = 400.0;    // deposit += n / a
    double beta = 3.5;           // osmotropotaxic sensitivity
    double sensory_delta = 0.2;  // 1/delta is the sensory capacity
    double crowd_theta = 5.0;    // item-count threshold of the crowding response
    int steepness = 2;           // response-threshold exponent
    std::uint64_t t_max = 1'000'000;
    std::size_t n_ants = 6;
    std::size_t grid_rows = 15;
    std::size_t grid_cols = 15;
    std::uint64_t seed = 1;
    // Weight of a turn by |turn| in 45 degree steps, 0 (straight) .. 4 (reverse).
    std::array<double, 5> turn_kernel{1.0, 0.5, 0.25, 0.1, 0.05};

    // Throws InvalidParams.
    void validate() const;
};

// Moore neighbourhood in scan order: N, NE, E, SE, S, SW, W, NW. Row grows downward.
inline constexpr std::array<std::array<int, 2>, 8> kDirections{{
    {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}}};

struct GridPos {
    std::size_t row = 0;
    std::size_t col = 0;
    friend bool operator==(const GridPos&, const GridPos&) = default;
};

// W(sigma) = (1 + sigma / (1 + delta sigma))^beta
double pheromone_weight(double sigma, const Params& p);
// Kernel value for a heading change of `turn` 45 degree steps; turn is taken mod 8.
double directional_weight(int turn, const Params& p = {});
// s^n / (s^n + theta^n)
double response_threshold(double s, double theta, int n);
// Crowding response to n items among the 8 surrounding cells.
double crowding(int n_items, const Params& p = {});
// sqrt(mean squared difference); throws DimensionMismatch.
double feature_distance(const FeatureVector& a, const FeatureVector& b);
double drop_threshold(double d, const Params& p);
double pick_threshold(double d, const Params& p);
inline double pick_probability(double chi, double eps) { return (1.0 - chi) * eps; }
inline double drop_probability(double chi, double delta_fn) { return chi * delta_fn; }

struct Ant {
    GridPos pos;
    int heading = 0;  // index into kDirections
    std::optional<std::size_t> carrying;
    friend bool operator==(const Ant&, const Ant&) = default;
};

class SwarmState {
public:
    // Places items, then ants, on uniformly random cells by rejection; each ant then draws
    // a heading. Items may share a cell with an ant, never with another item.
    // Throws CapacityExceeded, InvalidParams.
    static SwarmState initialize(std::vector<FeatureVector> items, const Params& p);

    // Explicit layout, for replay and tests. Carried items have no grid position and
    // their entry in item_positions is ignored.
    SwarmState(const Params& p, std::vector<FeatureVector> items, std::vector<GridPos> item_positions,
               std::vector<Ant> ants, Rng rng);

    const Params& params() const { return params_; }
    std::size_t rows() const { return params_.grid_rows; }
    std::size_t cols() const { return params_.grid_cols; }
    std::uint64_t t() const { return t_; }
    std::span<const Ant> ants() const { return ants_; }
    std::span<const FeatureVector> items() const { return items_; }
    std::span<const double> pheromone() const { return pheromone_; }
    double pheromone(GridPos at) const { return pheromone_[index(at)]; }
    std::optional<std::size_t> item_at(GridPos at) const;
    std::optional<std::size_t> ant_at(GridPos at) const;

    GridPos neighbour(GridPos at, int dir) const;
    int items_around(GridPos at) const;

    // Movement distribution over kDirections for ant `a`; cells holding another ant get 0.
    // All zeros when the ant is boxed in.
    std::array<double, 8> transition_probabilities(std::size_t a) const;

    // One ant's full turn: pick/drop vote, move, deposit.
    void agent_act(std::size_t a);
    void evaporate();
    // Every ant acts in index order, then the field evaporates.
    void step();
    // Places every carried item at its ant's cell, or the nearest free cell.
    void force_drop();

    // Position of every item; carried items report their ant's cell.
    std::vector<GridPos> item_positions() const;

    // Empty when all structural invariants hold, else a description of the first failure.
    std::string check_invariants() const;

    void set_pheromone(GridPos at, double sigma) { pheromone_[index(at)] = sigma; }

    friend bool operator==(const SwarmState&, const SwarmState&) = default;

private:
    SwarmState(const Params& p, std::vector<FeatureVector> items, Rng rng);

    std::size_t index(GridPos at) const { return at.row * cols() + at.col; }
    GridPos position(std::size_t cell) const { return {cell / cols(), cell % cols()}; }
    void build_neighbours();
    void move(std::size_t a);

    static constexpr std::int32_t kEmpty = -1;

    Params params_;
    std::vector<FeatureVector> items_;
    std::vector<std::int32_t> item_grid_;
    std::vector<std::int32_t> ant_grid_;
    std::vector<double> pheromone_;
    std::vector<std::uint32_t> neighbours_;  // cell * 8 + dir
    std::vector<Ant> ants_;
    Rng rng_;
    std::uint64_t t_ = 0;
};

struct Snapshot {
    std::uint64_t step = 0;
    std::vector<GridPos> item_positions;  // indexed by item
};

using Observer = std::function<void(const SwarmState&)>;

// Initializes, iterates t_max steps, force-drops. Snapshots are taken at t = 0, at every
// positive multiple of snapshot_every below t_max, and after the force-drop at t_max.
// The observer, when set, sees the state after initialization and after every step.
std::vector<Snapshot> run(std::span<const FeatureVector> items, const Params& p,
                          std::uint64_t snapshot_every = 0, const Observer& observer = {});

// Shannon entropy (natural log) of the item distribution over block_size x block_size
// blocks; edge blocks may be smaller. Throws NoItems.
double spatial_entropy(std::span<const GridPos> positions, std::size_t rows, std::size_t cols,
                       std::size_t block_size);

}  // namespace stigmergia::swarm
