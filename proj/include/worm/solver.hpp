#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "worm/graph.hpp"
#include "worm/mixed_hypergraph.hpp"

namespace worm {

struct SearchBudget {
    std::optional<std::uint64_t> node_limit;
    std::optional<std::chrono::milliseconds> time_limit;

    static SearchBudget unlimited() { return {}; }
    static SearchBudget seconds(double s)
    {
        SearchBudget b;
        b.time_limit = std::chrono::milliseconds(static_cast<long long>(s * 1000.0));
        return b;
    }
    void validate() const
    {
        if (node_limit && *node_limit == 0)
            throw input_error("node limit must be positive");
        if (time_limit && time_limit->count() <= 0)
            throw input_error("time limit must be positive");
    }
};

enum class SearchStatus { found, infeasible, budget_exceeded };

/// Thrown by constructors of colorings that cannot report a partial result.
class budget_exceeded : public std::runtime_error {
public:
    budget_exceeded()
        : std::runtime_error("search budget exceeded")
    {
    }
};

struct SearchResult {
    SearchStatus status = SearchStatus::infeasible;
    std::optional<Coloring> coloring;
    std::uint64_t nodes = 0;
};

/// Preprocessed mixed hypergraph shared by any number of searches.
///
/// Identical sets from the two families are merged into one constraint that
/// carries both flags, so a bi-hypergraph costs one constraint per triangle.
/// The branching order is fixed: most incident constraints first, then
/// larger 2-section degree, then lower id.
class SearchModel {
public:
    explicit SearchModel(const MixedHypergraph& h)
        : n_(h.n)
    {
        h.validate();
        std::map<std::vector<Vertex>, int> index;
        auto add = [&](const std::vector<Vertex>& raw, bool is_c) {
            std::vector<Vertex> s = raw;
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            auto [it, fresh] = index.try_emplace(s, static_cast<int>(flags_.size()));
            if (fresh) {
                begin_.push_back(static_cast<int>(members_.size()));
                members_.insert(members_.end(), s.begin(), s.end());
                flags_.push_back(0);
            }
            flags_[it->second] |= is_c ? kC : kD;
        };
        for (const auto& s : h.c_family)
            add(s, true);
        for (const auto& s : h.d_family)
            add(s, false);
        begin_.push_back(static_cast<int>(members_.size()));

        incident_.resize(n_);
        for (int i = 0; i < constraint_count(); ++i)
            for (int k = begin_[i]; k < begin_[i + 1]; ++k)
                incident_[members_[k]].push_back(i);

        // a D-set of size 1 after dedup can never be satisfied; a C-set of size 1 neither
        for (int i = 0; i < constraint_count(); ++i)
            if (begin_[i + 1] - begin_[i] < 2)
                trivially_infeasible_ = true;

        std::vector<int> deg2(n_, 0);
        for (Vertex v = 0; v < n_; ++v) {
            std::vector<Vertex> nb;
            for (int c : incident_[v])
                for (int k = begin_[c]; k < begin_[c + 1]; ++k)
                    if (members_[k] != v)
                        nb.push_back(members_[k]);
            std::sort(nb.begin(), nb.end());
            deg2[v] = static_cast<int>(std::unique(nb.begin(), nb.end()) - nb.begin());
        }
        order_.resize(n_);
        for (Vertex v = 0; v < n_; ++v)
            order_[v] = v;
        std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
            if (incident_[a].size() != incident_[b].size())
                return incident_[a].size() > incident_[b].size();
            if (deg2[a] != deg2[b])
                return deg2[a] > deg2[b];
            return a < b;
        });
    }

    int order() const { return n_; }
    int constraint_count() const { return static_cast<int>(flags_.size()); }
    const std::vector<Vertex>& branching_order() const { return order_; }

private:
    friend class Search;
    static constexpr std::uint8_t kC = 1;
    static constexpr std::uint8_t kD = 2;

    int n_;
    std::vector<int> begin_;
    std::vector<Vertex> members_;
    std::vector<std::uint8_t> flags_;
    std::vector<std::vector<int>> incident_;
    std::vector<Vertex> order_;
    bool trivially_infeasible_ = false;
};

/// Exactly-s coloring search: canonical backtracking with forward checking.
///
/// Domains are bit sets over colors 1..s. Constraints only ever mention
/// colors already in use, so the unused colors stay interchangeable and the
/// branching vertex is offered at most one of them. Colors in use are always
/// 1..used_.
class Search {
public:
    Search(const SearchModel& model, int s, SearchBudget budget = {})
        : m_(model)
        , s_(s)
        , budget_(budget)
    {
        if (s < 1)
            throw input_error("color count must be positive");
        budget_.validate();
        words_ = (static_cast<std::size_t>(s) + 64) / 64;
        dom_.assign(static_cast<std::size_t>(m_.n_) * words_, 0);
        for (Vertex v = 0; v < m_.n_; ++v)
            for (int c = 1; c <= s; ++c)
                dom_[v * words_ + (c >> 6)] |= std::uint64_t{1} << (c & 63);
        color_.assign(m_.n_, 0);
        scratch_.resize(words_);
    }

    SearchResult run()
    {
        start_ = std::chrono::steady_clock::now();
        SearchResult res;
        if (m_.trivially_infeasible_ || s_ > m_.n_) {
            res.status = SearchStatus::infeasible;
            return res;
        }
        bool found = dfs(0);
        res.nodes = nodes_;
        if (found) {
            Coloring c(color_);
            res.status = SearchStatus::found;
            res.coloring = c.canonical();
        } else {
            res.status = aborted_ ? SearchStatus::budget_exceeded : SearchStatus::infeasible;
        }
        return res;
    }

private:
    struct DomainUndo {
        std::size_t word;
        std::uint64_t old;
    };

    std::uint64_t* dom(Vertex v) { return dom_.data() + v * words_; }

    bool has_color(Vertex v, int c) { return (dom(v)[c >> 6] >> (c & 63)) & 1U; }

    int domain_size(Vertex v)
    {
        int k = 0;
        for (std::size_t i = 0; i < words_; ++i)
            k += std::popcount(dom(v)[i]);
        return k;
    }

    int first_color(Vertex v)
    {
        for (std::size_t i = 0; i < words_; ++i)
            if (dom(v)[i])
                return static_cast<int>(i * 64) + std::countr_zero(dom(v)[i]);
        return 0;
    }

    void write_word(Vertex v, std::size_t i, std::uint64_t value)
    {
        std::size_t at = v * words_ + i;
        if (dom_[at] == value)
            return;
        dom_trail_.push_back({at, dom_[at]});
        dom_[at] = value;
    }

    bool budget_hit()
    {
        if (budget_.node_limit && nodes_ > *budget_.node_limit)
            return true;
        if (budget_.time_limit && (nodes_ & 1023) == 0)
            return std::chrono::steady_clock::now() - start_ > *budget_.time_limit;
        return false;
    }

    // Assigns v := c and runs forward checking to a fixpoint over forced
    // singletons. Returns false on a wipe-out.
    bool assign(Vertex v, int c)
    {
        std::size_t head = queue_.size();
        queue_.push_back({v, c});
        for (std::size_t qi = head; qi < queue_.size(); ++qi) {
            auto [x, cx] = queue_[qi];
            if (color_[x] != 0) {
                if (color_[x] != cx)
                    return false;
                continue;
            }
            color_[x] = cx;
            assigned_.push_back(x);
            used_ = std::max(used_, cx);
            for (int con : m_.incident_[x])
                if (!propagate(con))
                    return false;
        }
        return true;
    }

    bool propagate(int con)
    {
        const int b = m_.begin_[con], e = m_.begin_[con + 1];
        const std::uint8_t flags = m_.flags_[con];
        Vertex open = -1;
        int unassigned = 0;
        bool repeat = false, distinct = false;
        std::fill(scratch_.begin(), scratch_.end(), 0);
        int first = 0;
        for (int k = b; k < e; ++k) {
            Vertex u = m_.members_[k];
            int cu = color_[u];
            if (cu == 0) {
                ++unassigned;
                open = u;
                continue;
            }
            std::uint64_t bit = std::uint64_t{1} << (cu & 63);
            if (scratch_[cu >> 6] & bit)
                repeat = true;
            scratch_[cu >> 6] |= bit;
            if (first == 0)
                first = cu;
            else if (cu != first)
                distinct = true;
        }
        if (unassigned == 0)
            return (!(flags & SearchModel::kC) || repeat) && (!(flags & SearchModel::kD) || distinct);
        if (unassigned > 1)
            return true;

        bool changed = false;
        if ((flags & SearchModel::kC) && !repeat) {
            // last vertex must repeat one of the colors already present
            for (std::size_t i = 0; i < words_; ++i) {
                std::uint64_t w = dom(open)[i] & scratch_[i];
                if (w != dom(open)[i]) {
                    write_word(open, i, w);
                    changed = true;
                }
            }
        }
        if ((flags & SearchModel::kD) && !distinct) {
            if (has_color(open, first)) {
                write_word(open, first >> 6, dom(open)[first >> 6] & ~(std::uint64_t{1} << (first & 63)));
                changed = true;
            }
        }
        if (!changed)
            return true;
        int size = domain_size(open);
        if (size == 0)
            return false;
        if (size == 1)
            queue_.push_back({open, first_color(open)});
        return true;
    }

    // Unassigned vertices that can still take an unused color.
    bool enough_room()
    {
        int need = s_ - used_;
        if (need <= 0)
            return true;
        int fresh = used_ + 1;
        int room = 0;
        for (Vertex v = 0; v < m_.n_; ++v)
            if (color_[v] == 0 && has_color(v, fresh) && ++room >= need)
                return true;
        return false;
    }

    bool dfs(std::size_t pos)
    {
        ++nodes_;
        if (budget_hit()) {
            aborted_ = true;
            return false;
        }
        while (pos < m_.order_.size() && color_[m_.order_[pos]] != 0)
            ++pos;
        if (pos == m_.order_.size())
            return used_ == s_;
        if (!enough_room())
            return false;

        Vertex v = m_.order_[pos];
        const int limit = std::min(s_, used_ + 1);
        std::vector<int> candidates;
        for (int c = 1; c <= limit; ++c)
            if (has_color(v, c))
                candidates.push_back(c);
        // while colors are still missing, try the unused one first
        if (used_ < s_ && !candidates.empty() && candidates.back() == used_ + 1)
            std::rotate(candidates.rbegin(), candidates.rbegin() + 1, candidates.rend());

        for (int c : candidates) {
            const std::size_t dom_mark = dom_trail_.size();
            const std::size_t asg_mark = assigned_.size();
            const int used_mark = used_;
            queue_.clear();
            if (assign(v, c) && dfs(pos + 1))
                return true;
            while (dom_trail_.size() > dom_mark) {
                dom_[dom_trail_.back().word] = dom_trail_.back().old;
                dom_trail_.pop_back();
            }
            while (assigned_.size() > asg_mark) {
                color_[assigned_.back()] = 0;
                assigned_.pop_back();
            }
            used_ = used_mark;
            if (aborted_)
                return false;
        }
        return false;
    }

    const SearchModel& m_;
    int s_;
    SearchBudget budget_;
    std::size_t words_ = 1;
    std::vector<std::uint64_t> dom_;
    std::vector<int> color_;
    std::vector<Vertex> assigned_;
    std::vector<DomainUndo> dom_trail_;
    std::vector<std::pair<Vertex, int>> queue_;
    std::vector<std::uint64_t> scratch_;
    int used_ = 0;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::chrono::steady_clock::time_point start_;
};

inline SearchResult find_exactly_s(const SearchModel& model, int s, const SearchBudget& budget = {})
{
    return Search(model, s, budget).run();
}

inline SearchResult find_exactly_s(const MixedHypergraph& h, int s, const SearchBudget& budget = {})
{
    return find_exactly_s(SearchModel(h), s, budget);
}

/// Outcome of a min/max sweep.
struct ChromaticBound {
    enum class Status { exact, uncolorable, indeterminate };
    Status status = Status::uncolorable;
    /// exact value; for indeterminate, [lo, hi] is the range still open
    int value = 0;
    int lo = 0;
    int hi = 0;
    std::optional<Coloring> witness;

    bool exact() const { return status == Status::exact; }
};

namespace detail {

template <class Range>
ChromaticBound sweep(const SearchModel& model, Range values, const SearchBudget& budget)
{
    ChromaticBound res;
    std::vector<int> unknown;
    for (int s : values) {
        auto r = find_exactly_s(model, s, budget);
        if (r.status == SearchStatus::budget_exceeded) {
            unknown.push_back(s);
            continue;
        }
        if (r.status == SearchStatus::found) {
            res.witness = r.coloring;
            if (unknown.empty()) {
                res.status = ChromaticBound::Status::exact;
                res.value = res.lo = res.hi = s;
            } else {
                res.status = ChromaticBound::Status::indeterminate;
                res.lo = std::min(unknown.front(), s);
                res.hi = std::max(unknown.front(), s);
                res.value = s;
            }
            return res;
        }
    }
    if (!unknown.empty()) {
        res.status = ChromaticBound::Status::indeterminate;
        res.lo = *std::min_element(unknown.begin(), unknown.end());
        res.hi = *std::max_element(unknown.begin(), unknown.end());
    }
    return res;
}

inline std::vector<int> ascending(int n)
{
    std::vector<int> v;
    for (int s = 1; s <= n; ++s)
        v.push_back(s);
    return v;
}

} // namespace detail

/// Smallest s admitting a coloring with exactly s colors. For an empty
/// vertex set the answer is 0.
inline ChromaticBound lower_chromatic(const MixedHypergraph& h, const SearchBudget& budget = {})
{
    if (h.n == 0)
        return {ChromaticBound::Status::exact, 0, 0, 0, Coloring()};
    return detail::sweep(SearchModel(h), detail::ascending(h.n), budget);
}

/// Largest s admitting a coloring with exactly s colors, searched downward from n.
inline ChromaticBound upper_chromatic(const MixedHypergraph& h, const SearchBudget& budget = {})
{
    if (h.n == 0)
        return {ChromaticBound::Status::exact, 0, 0, 0, Coloring()};
    auto values = detail::ascending(h.n);
    std::reverse(values.begin(), values.end());
    return detail::sweep(SearchModel(h), values, budget);
}

/// Proper chromatic number of g.
inline ChromaticBound chromatic_number(const Graph& g, const SearchBudget& budget = {})
{
    if (g.order() == 0)
        return {ChromaticBound::Status::exact, 0, 0, 0, Coloring()};
    return detail::sweep(SearchModel(proper_coloring_hypergraph(g)), detail::ascending(g.order()), budget);
}

struct SpectrumReport {
    bool colorable = false;
    /// false when some s ran out of budget; `undecided` lists those s
    bool complete = true;
    std::optional<int> w_minus;
    std::optional<int> w_plus;
    std::vector<int> feasible;
    std::vector<int> gaps;
    std::vector<int> undecided;
    std::map<int, Coloring> witnesses;
};

struct SpectrumOptions {
    bool keep_witnesses = true;
    /// worker threads for the per-s sweep; results do not depend on it
    unsigned threads = 1;
};

inline SpectrumReport feasible_set(const MixedHypergraph& h, const SearchBudget& budget = {},
                                   SpectrumOptions options = {})
{
    SpectrumReport rep;
    if (h.n == 0) {
        rep.colorable = true;
        rep.w_minus = rep.w_plus = 0;
        rep.feasible = {0};
        rep.witnesses[0] = Coloring();
        return rep;
    }
    const SearchModel model(h);
    std::vector<SearchResult> results(h.n + 1);
    std::atomic<int> next{1};
    auto worker = [&] {
        for (int s = next++; s <= h.n; s = next++)
            results[s] = find_exactly_s(model, s, budget);
    };
    unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(h.n)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    for (int s = 1; s <= h.n; ++s) {
        auto& r = results[s];
        if (r.status == SearchStatus::found) {
            rep.feasible.push_back(s);
            if (options.keep_witnesses)
                rep.witnesses[s] = *r.coloring;
        } else if (r.status == SearchStatus::budget_exceeded) {
            rep.undecided.push_back(s);
            rep.complete = false;
        }
    }
    rep.colorable = !rep.feasible.empty();
    if (rep.colorable) {
        rep.w_minus = rep.feasible.front();
        rep.w_plus = rep.feasible.back();
        for (int k = *rep.w_minus + 1; k < *rep.w_plus; ++k)
            if (!std::binary_search(rep.feasible.begin(), rep.feasible.end(), k)
                && !std::binary_search(rep.undecided.begin(), rep.undecided.end(), k))
                rep.gaps.push_back(k);
    }
    return rep;
}

} // namespace worm
