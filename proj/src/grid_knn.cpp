#include "stigmergia/grid_knn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "stigmergia/errors.hpp"

namespace stigmergia::knn {

std::size_t toroidal_distance_sq(std::size_t ra, std::size_t ca, std::size_t rb, std::size_t cb,
                                 std::size_t rows, std::size_t cols) {
    const std::size_t dr0 = ra > rb ? ra - rb : rb - ra;
    const std::size_t dc0 = ca > cb ? ca - cb : cb - ca;
    const std::size_t dr = std::min(dr0, rows - dr0);
    const std::size_t dc = std::min(dc0, cols - dc0);
    return dr * dr + dc * dc;
}

double toroidal_distance(std::size_t ra, std::size_t ca, std::size_t rb, std::size_t cb, std::size_t rows,
                         std::size_t cols) {
    return std::sqrt(static_cast<double>(toroidal_distance_sq(ra, ca, rb, cb, rows, cols)));
}

namespace {

struct Split {
    std::vector<const PlacementEntry*> markers;  // sorted by id
    std::vector<const PlacementEntry*> queries;  // input order
};

Split validate_and_split(const Placement& p, std::size_t k) {
    if (k == 0 || k % 2 == 0) throw EvenK("k must be a positive odd number, got " + std::to_string(k));
    Split s;
    std::unordered_set<std::uint64_t> ids;
    std::vector<bool> occupied(p.grid_rows * p.grid_cols);
    for (const auto& e : p.entries) {
        if (e.row >= p.grid_rows || e.col >= p.grid_cols) throw std::invalid_argument("placement entry off grid");
        if (!ids.insert(e.id).second) throw std::invalid_argument("duplicate id " + std::to_string(e.id));
        const std::size_t cell = e.row * p.grid_cols + e.col;
        if (occupied[cell])
            throw std::invalid_argument("two entries share cell " + std::to_string(e.row) + "," + std::to_string(e.col));
        occupied[cell] = true;
        (e.label ? s.markers : s.queries).push_back(&e);
    }
    if (s.markers.size() < k)
        throw NotEnoughMarkers("need " + std::to_string(k) + " markers, have " + std::to_string(s.markers.size()));
    std::sort(s.markers.begin(), s.markers.end(), [](auto* a, auto* b) { return a->id < b->id; });
    return s;
}

std::string classify_one(const PlacementEntry& q, std::span<const PlacementEntry* const> markers, std::size_t k,
                         std::size_t rows, std::size_t cols) {
    struct Candidate {
        std::size_t d2;
        std::uint64_t id;
        const std::string* label;
    };
    std::vector<Candidate> cand;
    cand.reserve(markers.size());
    for (const auto* m : markers)
        cand.push_back({toroidal_distance_sq(q.row, q.col, m->row, m->col, rows, cols), m->id, &*m->label});
    auto closer = [](const Candidate& a, const Candidate& b) { return a.d2 != b.d2 ? a.d2 < b.d2 : a.id < b.id; };
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end(), closer);

    struct Tally {
        std::size_t votes = 0;
        std::uint64_t min_id = UINT64_MAX;
    };
    std::map<std::string, Tally> tally;
    for (std::size_t i = 0; i < k; ++i) {
        auto& t = tally[*cand[i].label];
        ++t.votes;
        t.min_id = std::min(t.min_id, cand[i].id);
    }
    const auto best = std::max_element(tally.begin(), tally.end(), [](const auto& a, const auto& b) {
        if (a.second.votes != b.second.votes) return a.second.votes < b.second.votes;
        return a.second.min_id > b.second.min_id;
    });
    return best->first;
}

}  // namespace

std::vector<Prediction> knn_classify(const Placement& p, std::size_t k) {
    const Split s = validate_and_split(p, k);
    std::vector<Prediction> out(s.queries.size());
    const auto n = static_cast<std::ptrdiff_t>(s.queries.size());
#pragma omp parallel for schedule(dynamic, 16) if (s.queries.size() * s.markers.size() >= (1u << 16))
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = {s.queries[i]->id, classify_one(*s.queries[i], s.markers, k, p.grid_rows, p.grid_cols)};
    return out;
}

std::vector<Prediction> knn_classify_serial(const Placement& p, std::size_t k) {
    const Split s = validate_and_split(p, k);
    std::vector<Prediction> out;
    out.reserve(s.queries.size());
    for (const auto* q : s.queries) out.push_back({q->id, classify_one(*q, s.markers, k, p.grid_rows, p.grid_cols)});
    return out;
}

double accuracy(std::span<const Prediction> predicted, std::span<const Prediction> truth) {
    std::unordered_map<std::uint64_t, const std::string*> expected;
    for (const auto& t : truth)
        if (!expected.emplace(t.id, &t.label).second) throw IdMismatch("duplicate id in truth");
    if (predicted.size() != expected.size()) throw IdMismatch("prediction and truth cover different ids");
    if (predicted.empty()) throw IdMismatch("no predictions to score");
    std::size_t correct = 0;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& pr : predicted) {
        const auto it = expected.find(pr.id);
        if (it == expected.end() || !seen.insert(pr.id).second)
            throw IdMismatch("prediction id " + std::to_string(pr.id) + " not matched in truth");
        correct += *it->second == pr.label;
    }
    return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

}  // namespace stigmergia::knn
