#include "stigmergia/swarm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stigmergia/errors.hpp"
#include "stigmergia/kernels.hpp"

namespace stigmergia::swarm {

void Params::validate() const {
    auto fail = [](const std::string& msg) { throw InvalidParams(msg); };
    if (!(k1 > 0)) fail("k1 must be > 0");
    if (!(k2 > 0)) fail("k2 must be > 0");
    if (!(evap_K >= 0 && evap_K < 1)) fail("evap_K must be in [0, 1)");
    if (!(eta >= 0)) fail("eta must be >= 0");
    if (!(deposit_a > 0)) fail("deposit_a must be > 0");
    if (!(beta > 0)) fail("beta must be > 0");
    if (!(sensory_delta >= 0)) fail("sensory_delta must be >= 0");
    if (!(crowd_theta > 0)) fail("crowd_theta must be > 0");
    if (steepness < 2) fail("steepness must be >= 2");
    if (grid_rows < 3 || grid_cols < 3) fail("grid must be at least 3x3");
    if (grid_rows * grid_cols > std::numeric_limits<std::int32_t>::max()) fail("grid too large");
    for (double w : turn_kernel)
        if (!(w > 0)) fail("turn_kernel entries must be > 0");
}

double pheromone_weight(double sigma, const Params& p) {
    return std::pow(1.0 + sigma / (1.0 + p.sensory_delta * sigma), p.beta);
}

double directional_weight(int turn, const Params& p) {
    const int t = ((turn % 8) + 8) % 8;
    return p.turn_kernel[static_cast<std::size_t>(std::min(t, 8 - t))];
}

double response_threshold(double s, double theta, int n) {
    const double sn = std::pow(s, n);
    const double tn = std::pow(theta, n);
    return sn / (sn + tn);
}

double crowding(int n_items, const Params& p) {
    return response_threshold(static_cast<double>(n_items), p.crowd_theta, p.steepness);
}

double feature_distance(const FeatureVector& a, const FeatureVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("feature_distance: vectors differ in length");
    if (a.size() == 0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    // d_max = 1 for features scaled to [0, 1]
    return std::sqrt(acc / static_cast<double>(a.size()));
}

double drop_threshold(double d, const Params& p) {
    const double r = p.k1 / (p.k1 + d);
    return r * r;
}

double pick_threshold(double d, const Params& p) {
    const double r = d / (p.k2 + d);
    return r * r;
}

// ---------------------------------------------------------------------------

SwarmState::SwarmState(const Params& p, std::vector<FeatureVector> items, Rng rng)
    : params_(p), items_(std::move(items)), rng_(rng) {
    params_.validate();
    const std::size_t cells = rows() * cols();
    if (items_.size() > cells) throw CapacityExceeded("more items than grid cells");
    if (params_.n_ants > cells) throw CapacityExceeded("more ants than grid cells");
    if (!items_.empty()) {
        const std::size_t dims = items_.front().size();
        for (const auto& f : items_)
            if (f.size() != dims) throw DimensionMismatch("items differ in feature count");
    }
    item_grid_.assign(cells, kEmpty);
    ant_grid_.assign(cells, kEmpty);
    pheromone_.assign(cells, 0.0);
    build_neighbours();
}

SwarmState::SwarmState(const Params& p, std::vector<FeatureVector> items, std::vector<GridPos> item_positions,
                       std::vector<Ant> ants, Rng rng)
    : SwarmState(p, std::move(items), rng) {
    if (item_positions.size() != items_.size()) throw std::invalid_argument("one position per item required");
    if (ants.size() != params_.n_ants) throw std::invalid_argument("ant roster size != n_ants");
    std::vector<bool> carried(items_.size(), false);
    for (const Ant& ant : ants) {
        if (ant.pos.row >= rows() || ant.pos.col >= cols()) throw std::invalid_argument("ant off grid");
        if (ant.heading < 0 || ant.heading > 7) throw std::invalid_argument("bad ant heading");
        if (ant.carrying) {
            if (*ant.carrying >= items_.size() || carried[*ant.carrying])
                throw std::invalid_argument("bad carried item");
            carried[*ant.carrying] = true;
        }
    }
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (carried[i]) continue;
        const GridPos at = item_positions[i];
        if (at.row >= rows() || at.col >= cols()) throw std::invalid_argument("item off grid");
        if (item_grid_[index(at)] != kEmpty) throw std::invalid_argument("two items on one cell");
        item_grid_[index(at)] = static_cast<std::int32_t>(i);
    }
    for (std::size_t a = 0; a < ants.size(); ++a) {
        if (ant_grid_[index(ants[a].pos)] != kEmpty) throw std::invalid_argument("two ants on one cell");
        ant_grid_[index(ants[a].pos)] = static_cast<std::int32_t>(a);
    }
    ants_ = std::move(ants);
}

SwarmState SwarmState::initialize(std::vector<FeatureVector> items, const Params& p) {
    SwarmState s(p, std::move(items), Rng(p.seed));
    const std::size_t cells = s.rows() * s.cols();
    for (std::size_t i = 0; i < s.items_.size(); ++i) {
        std::size_t cell;
        do {
            cell = s.rng_.below(cells);
        } while (s.item_grid_[cell] != kEmpty);
        s.item_grid_[cell] = static_cast<std::int32_t>(i);
    }
    s.ants_.resize(p.n_ants);
    for (std::size_t a = 0; a < p.n_ants; ++a) {
        std::size_t cell;
        do {
            cell = s.rng_.below(cells);
        } while (s.ant_grid_[cell] != kEmpty);
        s.ant_grid_[cell] = static_cast<std::int32_t>(a);
        s.ants_[a].pos = s.position(cell);
        s.ants_[a].heading = static_cast<int>(s.rng_.below(8));
    }
    return s;
}

void SwarmState::build_neighbours() {
    const std::size_t R = rows(), C = cols();
    neighbours_.resize(R * C * 8);
    for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t c = 0; c < C; ++c) {
            for (int d = 0; d < 8; ++d) {
                const std::size_t nr = (r + R + static_cast<std::size_t>(kDirections[d][0] + 1) - 1) % R;
                const std::size_t nc = (c + C + static_cast<std::size_t>(kDirections[d][1] + 1) - 1) % C;
                neighbours_[(r * C + c) * 8 + static_cast<std::size_t>(d)] = static_cast<std::uint32_t>(nr * C + nc);
            }
        }
    }
}

std::optional<std::size_t> SwarmState::item_at(GridPos at) const {
    const auto v = item_grid_[index(at)];
    if (v == kEmpty) return std::nullopt;
    return static_cast<std::size_t>(v);
}

std::optional<std::size_t> SwarmState::ant_at(GridPos at) const {
    const auto v = ant_grid_[index(at)];
    if (v == kEmpty) return std::nullopt;
    return static_cast<std::size_t>(v);
}

GridPos SwarmState::neighbour(GridPos at, int dir) const {
    return position(neighbours_[index(at) * 8 + static_cast<std::size_t>(dir)]);
}

int SwarmState::items_around(GridPos at) const {
    const std::uint32_t* nb = &neighbours_[index(at) * 8];
    int n = 0;
    for (int d = 0; d < 8; ++d) n += item_grid_[nb[d]] != kEmpty;
    return n;
}

std::array<double, 8> SwarmState::transition_probabilities(std::size_t a) const {
    const Ant& ant = ants_[a];
    const std::uint32_t* nb = &neighbours_[index(ant.pos) * 8];
    std::array<double, 8> w{};
    double total = 0.0;
    for (int d = 0; d < 8; ++d) {
        if (ant_grid_[nb[d]] != kEmpty) continue;
        w[d] = pheromone_weight(pheromone_[nb[d]], params_) * directional_weight(d - ant.heading, params_);
        total += w[d];
    }
    if (total > 0.0)
        for (double& x : w) x /= total;
    return w;
}

void SwarmState::move(std::size_t a) {
    Ant& ant = ants_[a];
    const std::uint32_t* nb = &neighbours_[index(ant.pos) * 8];
    std::array<double, 8> w{};
    double total = 0.0;
    for (int d = 0; d < 8; ++d) {
        if (ant_grid_[nb[d]] != kEmpty) continue;
        w[d] = pheromone_weight(pheromone_[nb[d]], params_) * directional_weight(d - ant.heading, params_);
        total += w[d];
    }
    if (total <= 0.0) return;  // boxed in: stay, keep heading, no draw

    const double target = rng_.uniform() * total;
    int chosen = -1;
    double acc = 0.0;
    for (int d = 0; d < 8; ++d) {
        if (w[d] <= 0.0) continue;
        chosen = d;
        acc += w[d];
        if (target < acc) break;
    }
    ant_grid_[index(ant.pos)] = kEmpty;
    ant.pos = position(nb[chosen]);
    ant.heading = chosen;
    ant_grid_[nb[chosen]] = static_cast<std::int32_t>(a);
}

void SwarmState::agent_act(std::size_t a) {
    Ant& ant = ants_[a];
    const std::size_t here = index(ant.pos);
    const std::uint32_t* nb = &neighbours_[here * 8];
    const int n = items_around(ant.pos);
    const double chi = crowding(n, params_);

    if (!ant.carrying && item_grid_[here] != kEmpty) {
        const auto& focal = items_[static_cast<std::size_t>(item_grid_[here])];
        int votes = 0;
        for (int d = 0; d < 8; ++d) {
            const auto other = item_grid_[nb[d]];
            if (other == kEmpty) continue;
            const double eps = pick_threshold(feature_distance(focal, items_[static_cast<std::size_t>(other)]), params_);
            if (rng_.uniform() < pick_probability(chi, eps)) ++votes;
        }
        if (2 * votes >= n) {  // also true for n == 0
            ant.carrying = static_cast<std::size_t>(item_grid_[here]);
            item_grid_[here] = kEmpty;
        }
    } else if (ant.carrying && item_grid_[here] == kEmpty) {
        const auto& focal = items_[*ant.carrying];
        int votes = 0;
        for (int d = 0; d < 8; ++d) {
            const auto other = item_grid_[nb[d]];
            if (other == kEmpty) continue;
            const double delta = drop_threshold(feature_distance(focal, items_[static_cast<std::size_t>(other)]), params_);
            if (rng_.uniform() < drop_probability(chi, delta)) ++votes;
        }
        if (n > 0 && 2 * votes >= n) {
            item_grid_[here] = static_cast<std::int32_t>(*ant.carrying);
            ant.carrying.reset();
        }
    }

    move(a);

    const int around = items_around(ant.pos);
    pheromone_[index(ant.pos)] += params_.eta + around / params_.deposit_a;
}

void SwarmState::evaporate() { kernels::decay(pheromone_, params_.evap_K); }

void SwarmState::step() {
    for (std::size_t a = 0; a < ants_.size(); ++a) agent_act(a);
    evaporate();
    ++t_;
}

void SwarmState::force_drop() {
    const std::size_t R = rows(), C = cols();
    for (Ant& ant : ants_) {
        if (!ant.carrying) continue;
        std::size_t target = index(ant.pos);
        if (item_grid_[target] != kEmpty) {
            std::size_t best = std::numeric_limits<std::size_t>::max();
            // row-major scan with strict '<' gives the row-major tie-break
            for (std::size_t cell = 0; cell < R * C; ++cell) {
                if (item_grid_[cell] != kEmpty) continue;
                const GridPos p = position(cell);
                const std::size_t dr0 = p.row > ant.pos.row ? p.row - ant.pos.row : ant.pos.row - p.row;
                const std::size_t dc0 = p.col > ant.pos.col ? p.col - ant.pos.col : ant.pos.col - p.col;
                const std::size_t dr = std::min(dr0, R - dr0), dc = std::min(dc0, C - dc0);
                const std::size_t d2 = dr * dr + dc * dc;
                if (d2 < best) {
                    best = d2;
                    target = cell;
                }
            }
        }
        item_grid_[target] = static_cast<std::int32_t>(*ant.carrying);
        ant.carrying.reset();
    }
}

std::vector<GridPos> SwarmState::item_positions() const {
    std::vector<GridPos> out(items_.size());
    for (std::size_t cell = 0; cell < item_grid_.size(); ++cell)
        if (item_grid_[cell] != kEmpty) out[static_cast<std::size_t>(item_grid_[cell])] = position(cell);
    for (const Ant& ant : ants_)
        if (ant.carrying) out[*ant.carrying] = ant.pos;
    return out;
}

std::string SwarmState::check_invariants() const {
    std::vector<int> seen(items_.size(), 0);
    for (std::size_t cell = 0; cell < item_grid_.size(); ++cell) {
        const auto v = item_grid_[cell];
        if (v == kEmpty) continue;
        if (v < 0 || static_cast<std::size_t>(v) >= items_.size()) return "invalid item id on grid";
        ++seen[static_cast<std::size_t>(v)];
    }
    std::size_t ants_on_grid = 0;
    for (std::size_t cell = 0; cell < ant_grid_.size(); ++cell) {
        const auto v = ant_grid_[cell];
        if (v == kEmpty) continue;
        ++ants_on_grid;
        if (v < 0 || static_cast<std::size_t>(v) >= ants_.size()) return "invalid ant id on grid";
        if (index(ants_[static_cast<std::size_t>(v)].pos) != cell) return "ant grid disagrees with roster";
    }
    if (ants_on_grid != ants_.size()) return "ant count on grid != roster size";
    for (const Ant& ant : ants_)
        if (ant.carrying) ++seen[*ant.carrying];
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i] != 1) return "item " + std::to_string(i) + " present " + std::to_string(seen[i]) + " times";
    for (double s : pheromone_)
        if (!(s >= 0.0)) return "negative pheromone";
    return {};
}

// ---------------------------------------------------------------------------

std::vector<Snapshot> run(std::span<const FeatureVector> items, const Params& p, std::uint64_t snapshot_every,
                          const Observer& observer) {
    SwarmState state = SwarmState::initialize({items.begin(), items.end()}, p);
    std::vector<Snapshot> history;
    history.push_back({0, state.item_positions()});
    if (observer) observer(state);
    for (std::uint64_t t = 1; t <= p.t_max; ++t) {
        state.step();
        if (observer) observer(state);
        if (snapshot_every > 0 && t < p.t_max && t % snapshot_every == 0)
            history.push_back({t, state.item_positions()});
    }
    state.force_drop();
    if (observer) observer(state);
    history.push_back({p.t_max, state.item_positions()});
    return history;
}

double spatial_entropy(std::span<const GridPos> positions, std::size_t rows, std::size_t cols,
                       std::size_t block_size) {
    if (positions.empty()) throw NoItems("spatial entropy of an empty placement");
    if (block_size == 0) throw std::invalid_argument("block_size must be positive");
    const std::size_t brows = (rows + block_size - 1) / block_size;
    const std::size_t bcols = (cols + block_size - 1) / block_size;
    std::vector<std::size_t> counts(brows * bcols, 0);
    for (const GridPos& g : positions) ++counts[(g.row / block_size) * bcols + g.col / block_size];
    const double total = static_cast<double>(positions.size());
    double e = 0.0;
    for (std::size_t c : counts) {
        if (!c) continue;
        const double pb = static_cast<double>(c) / total;
        e -= pb * std::log(pb);
    }
    return e;
}

}  // namespace stigmergia::swarm
