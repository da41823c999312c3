#include "hamfix/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "hamfix/cohomology.hpp"

namespace hamfix {

namespace {

using Gaps = std::array<std::int64_t, kDim>;

constexpr RuleMask kCohomologyRules = rule_bit(Rule::Integrality) | rule_bit(Rule::Duality) |
                                      rule_bit(Rule::Consistency) | rule_bit(Rule::Localization);

enum PruneReason : int { kDivisibility, kExtremal, kC1, kMod, kSymmetry, kWidth, kCapacity, kFilter, kReasons };
constexpr std::array<const char*, kReasons> kReasonNames = {"divisibility", "extremal", "c1",     "mod",
                                                           "symmetry",     "width",    "capacity", "filter"};

Gaps reversed(const Gaps& g) { return {g[4], g[3], g[2], g[1], g[0]}; }

// Toggles after masking by the rule set.
struct Active {
    bool divisibility, extremal, c1, mod, symmetry, width;
    unsigned kmask; // bit k set if c1 = k is admissible
};

Active resolve(const SearchSpec& s) {
    auto has = [&](Rule r) { return (s.rules & rule_bit(r)) != 0; };
    Active a{};
    a.divisibility = s.pruning.divisibility && has(Rule::Divisibility);
    a.extremal = s.pruning.extremal && has(Rule::ExtremalEdge);
    a.c1 = s.pruning.c1 && (has(Rule::C1Consistency) || s.c1.has_value());
    a.mod = s.pruning.mod && has(Rule::ModK);
    a.symmetry = s.pruning.symmetry;
    a.width = s.pruning.width && a.c1;
    if (s.c1) {
        a.kmask = (*s.c1 >= 1 && *s.c1 <= kPoints) ? (1u << *s.c1) : 0u;
    } else {
        for (int k = 1; k <= kPoints; ++k) a.kmask |= 1u << k;
    }
    return a;
}

struct Counters {
    SearchStats stats;
    std::array<std::uint64_t, kReasons> pruned{};
    std::map<std::string, std::uint64_t> rejected;

    void flush() {
        for (int r = 0; r < kReasons; ++r) {
            if (pruned[r]) stats.pruned[kReasonNames[r]] += pruned[r];
        }
        for (const auto& [k, v] : rejected) stats.pruned[k] += v;
        pruned.fill(0);
        rejected.clear();
    }
};

bool passes_filters(const Configuration& c, const SearchSpec& spec, const std::optional<std::int64_t>& c1) {
    if (spec.c1 && c1 != spec.c1) return false;
    if (spec.require_max_weight && c.max_weight() != spec.max_weight) return false;
    if (spec.require_effective && c.weight_gcd() != 1) return false;
    for (auto [lo, hi] : spec.largest_from) {
        if (!carries_largest(c, lo, hi)) return false;
    }
    return true;
}

bool gaps_pass_filters(const Gaps& g, const SearchSpec& spec) {
    if (spec.symmetry_gaps && (g[0] != g[4] || g[1] != g[3])) return false;
    if (spec.fixed_gaps) {
        const Gaps& f = *spec.fixed_gaps;
        if (g != std::min(f, reversed(f))) return false;
    }
    return true;
}

/// Depth-first construction of all edge multisets over one gap vector.
class GapSearch {
public:
    GapSearch(const SearchSpec& spec, const Active& on, const Gaps& gaps, Counters& counters,
              std::atomic<std::uint64_t>& budget)
        : spec_(spec), on_(on), prof_(MomentProfile::from_gaps(gaps)), gaps_(gaps), maxw_(spec.max_weight),
          counters_(counters), budget_(budget), kmask_(on.kmask), residue_(static_cast<std::size_t>(maxw_) + 1) {
        palindrome_ = gaps == reversed(gaps);
        for (int v = 0; v < kPoints; ++v) rem_[v] = v;
        for (int v = 0; v < kDim; ++v) build_options(v);
    }

    void run(std::vector<Configuration>& out) {
        out_ = &out;
        choose(0, 0, kDim);
        flush_nodes();
    }

private:
    struct Option {
        int target;
        std::int64_t weight;
    };

    void build_options(int v) {
        auto& opts = options_[v];
        for (int u = v + 1; u < kPoints; ++u) {
            const auto gap = prof_.gap(v, u);
            if (on_.extremal && v == 0 && u == 1) {
                opts.push_back({u, gap});
                continue;
            }
            if (on_.extremal && v == kDim - 1) {
                opts.push_back({u, gap});
                continue;
            }
            for (std::int64_t w = 1; w <= maxw_; ++w) {
                if (on_.divisibility && gap % w != 0) continue;
                opts.push_back({u, w});
            }
        }
        auto& lo = suffix_min_[v];
        auto& hi = suffix_max_[v];
        lo.assign(opts.size() + 1, maxw_);
        hi.assign(opts.size() + 1, 1);
        for (std::size_t i = opts.size(); i-- > 0;) {
            lo[i] = std::min(lo[i + 1], opts[i].weight);
            hi[i] = std::max(hi[i + 1], opts[i].weight);
        }
    }

    void count_node() {
        ++counters_.stats.nodes;
        if (++pending_ >= 4096) flush_nodes();
    }

    void flush_nodes() {
        if (pending_ == 0) return;
        const auto total = budget_.fetch_add(pending_) + pending_;
        pending_ = 0;
        if (spec_.node_limit && total > *spec_.node_limit) {
            throw BudgetExceeded("node limit " + std::to_string(*spec_.node_limit) + " exceeded");
        }
    }

    // Allowed range of Gamma_0 implied by the range of Gamma_5.
    std::pair<std::int64_t, std::int64_t> gamma5_range() const {
        if (on_.extremal) return {-gaps_[4] - (kDim - 1) * maxw_, -gaps_[4] - (kDim - 1)};
        return {-kDim * maxw_, -kDim};
    }

    // Could Gamma_v end up anywhere in [lo, hi] for an admissible c1?
    bool gamma_reachable(int v, std::int64_t lo, std::int64_t hi) const {
        if (!on_.c1) return true;
        if (v == 0) {
            const auto [g5lo, g5hi] = gamma5_range();
            for (int k = 1; k <= kPoints; ++k) {
                if (!(kmask_ & (1u << k))) continue;
                const auto w = k * prof_.width();
                if (std::max(lo, w + g5lo) <= std::min(hi, w + g5hi)) return true;
            }
            return false;
        }
        for (int k = 1; k <= kPoints; ++k) {
            if (!(kmask_ & (1u << k))) continue;
            const auto target = gamma0_ - k * prof_[v];
            if (target >= lo && target <= hi) return true;
        }
        return false;
    }

    void push(int v, int u, std::int64_t w) {
        w_[v][nw_[v]++] = w;
        w_[u][nw_[u]++] = -w;
        sum_[v] += w;
        sum_[u] -= w;
        --rem_[u];
        edges_.push_back({v, u, w, 1});
    }

    void pop(int v, int u, std::int64_t w) {
        --nw_[v];
        --nw_[u];
        sum_[v] -= w;
        sum_[u] += w;
        ++rem_[u];
        edges_.pop_back();
    }

    void choose(int v, std::size_t idx, int slots) {
        if (slots == 0) {
            if (rem_[v + 1] == 0) close(v);
            return;
        }
        const auto& opts = options_[v];
        if (idx == opts.size()) return;
        const auto [u, w] = opts[idx];
        // every down slot of v + 1 has to come from v
        if (u > v + 1 && rem_[v + 1] != 0) return;
        const bool last_for_target = idx + 1 == opts.size() || opts[idx + 1].target != u;
        int maxc = std::min(slots, rem_[u]);
        int minc = 0;
        if (u == v + 1 && last_for_target) {
            if (rem_[u] > slots) return;
            minc = maxc = rem_[u];
        }
        int applied = 0;
        for (int c = 0; c <= maxc; ++c) {
            if (c > 0) {
                push(v, u, w);
                ++applied;
            }
            if (c < minc) continue;
            count_node();
            const int left = slots - c;
            if (left > 0 && idx + 1 == opts.size()) continue;
            const auto lo = sum_[v] + left * suffix_min_[v][idx + 1];
            const auto hi = sum_[v] + left * suffix_max_[v][idx + 1];
            if (!gamma_reachable(v, lo, hi)) {
                ++counters_.pruned[kC1];
                continue;
            }
            choose(v, idx + 1, left);
        }
        for (int i = 0; i < applied; ++i) pop(v, u, w);
    }

    bool update_c1(int v) {
        if (!on_.c1) return true;
        if (v == 0) gamma0_ = sum_[0];
        unsigned mask = 0;
        for (int k = 1; k <= kPoints; ++k) {
            if (!(kmask_ & (1u << k))) continue;
            bool ok = true;
            for (int x = 1; x <= v && ok; ++x) ok = sum_[x] == gamma0_ - k * prof_[x];
            for (int u = v + 1; u < kPoints && ok; ++u) {
                const auto target = gamma0_ - k * prof_[u];
                std::int64_t up_lo = kDim - u, up_hi = (kDim - u) * maxw_;
                if (on_.extremal && u == kDim - 1) up_lo = up_hi = gaps_[4];
                const auto lo = sum_[u] - rem_[u] * maxw_ + up_lo;
                const auto hi = sum_[u] - rem_[u] + up_hi;
                ok = target >= lo && target <= hi;
            }
            if (ok) mask |= 1u << k;
        }
        kmask_ = mask;
        return mask != 0;
    }

    bool capacity_ok(int v) const {
        int downs = 0, ups = 0;
        for (int t = v + 1; t < kPoints; ++t) {
            downs += rem_[t];
            if (downs > ups) return false;
            ups += kDim - t;
        }
        return true;
    }

    bool mod_ok(int v) {
        std::array<int, kPoints> parent{};
        for (std::int64_t k = 2; k <= maxw_; ++k) {
            std::iota(parent.begin(), parent.end(), 0);
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            bool any = false;
            for (const auto& e : edges_) {
                if (e.weight % k == 0) {
                    parent[find(e.lo)] = find(e.hi);
                    any = true;
                }
            }
            if (!any) continue;
            for (int x = 0; x <= v; ++x) {
                // compare against the smallest vertex of each component
                bool first = true;
                for (int y = 0; y < x; ++y) {
                    if (find(y) == find(x)) {
                        first = false;
                        break;
                    }
                }
                if (!first) continue;
                std::fill(residue_.begin(), residue_.begin() + k, 0);
                for (int i = 0; i < nw_[x]; ++i) ++residue_[static_cast<std::size_t>(((w_[x][i] % k) + k) % k)];
                for (int y = x + 1; y < kPoints; ++y) {
                    if (find(y) != find(x)) continue;
                    std::fill(scratch_.begin(), scratch_.end(), 0);
                    for (int i = 0; i < nw_[y]; ++i) {
                        const auto r = static_cast<std::size_t>(((w_[y][i] % k) + k) % k);
                        if (++scratch_[r] > residue_[r]) return false;
                    }
                }
            }
        }
        return true;
    }

    void close(int v) {
        const unsigned saved = kmask_;
        if (!update_c1(v)) {
            ++counters_.pruned[kC1];
        } else if (!capacity_ok(v)) {
            ++counters_.pruned[kCapacity];
        } else if (on_.mod && !mod_ok(v)) {
            ++counters_.pruned[kMod];
        } else if (v == kDim - 1) {
            leaf();
        } else {
            choose(v + 1, 0, kDim - (v + 1));
        }
        kmask_ = saved;
    }

    void leaf() {
        ++counters_.stats.leaves;
        Configuration c(prof_, edges_);
        if (on_.symmetry) {
            if (palindrome_ && flip(c) < c) {
                ++counters_.pruned[kSymmetry];
                return;
            }
        } else {
            c = canonicalize(c);
        }
        CheckFlags flags;
        flags.rules = spec_.rules;
        flags.fail_fast = true;
        const auto report = check_all(c, flags);
        if (!report.pass) {
            ++counters_.rejected["check:" + std::string(rule_name(report.violations.front().rule))];
            return;
        }
        if (spec_.rules & kCohomologyRules) {
            for (const auto& v : cohomology_obstructions(c)) {
                if (spec_.rules & rule_bit(v.rule)) {
                    ++counters_.rejected["check:" + std::string(rule_name(v.rule))];
                    return;
                }
            }
        }
        if (!passes_filters(c, spec_, report.c1)) {
            ++counters_.pruned[kFilter];
            return;
        }
        out_->push_back(Configuration(c.profile(), c.edges(), {}, c.weight_gcd() == 1));
    }

    const SearchSpec& spec_;
    const Active& on_;
    MomentProfile prof_;
    Gaps gaps_;
    std::int64_t maxw_;
    Counters& counters_;
    std::atomic<std::uint64_t>& budget_;
    std::uint64_t pending_ = 0;
    bool palindrome_ = false;

    std::array<std::vector<Option>, kDim> options_;
    std::array<std::vector<std::int64_t>, kDim> suffix_min_, suffix_max_;

    std::array<std::array<std::int64_t, kDim>, kPoints> w_{};
    std::array<int, kPoints> nw_{};
    std::array<std::int64_t, kPoints> sum_{};
    std::array<int, kPoints> rem_{};
    std::vector<WeightEdge> edges_;
    unsigned kmask_ = 0;
    std::int64_t gamma0_ = 0;

    std::vector<int> residue_;
    std::vector<int> scratch_ = std::vector<int>(residue_.size());
    std::vector<Configuration>* out_ = nullptr;

};

} // namespace

SearchStats& SearchStats::operator+=(const SearchStats& o) {
    gap_vectors += o.gap_vectors;
    nodes += o.nodes;
    leaves += o.leaves;
    for (const auto& [k, v] : o.pruned) pruned[k] += v;
    return *this;
}

void validate(const SearchSpec& spec) {
    if (spec.max_weight < 1) throw std::invalid_argument("maxWeight must be >= 1");
    if (spec.max_weight > 1000) throw std::invalid_argument("maxWeight must be <= 1000");
    if (spec.max_width < kDim) throw std::invalid_argument("maxWidth must be >= 5");
    if (spec.min_width > spec.max_width) throw std::invalid_argument("minWidth exceeds maxWidth");
    for (auto [lo, hi] : spec.largest_from) {
        if (lo < 0 || hi >= kPoints || lo >= hi) throw std::invalid_argument("largestFrom pairs need 0 <= lo < hi <= 5");
    }
    if (spec.fixed_gaps) {
        for (auto g : *spec.fixed_gaps) {
            if (g < 1) throw std::invalid_argument("fixedGaps must be positive");
        }
    }
}

int default_thread_count() {
    if (const char* env = std::getenv("HAMFIX_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SearchResult enumerate(const SearchSpec& spec) {
    validate(spec);
    const auto start = std::chrono::steady_clock::now();
    const Active on = resolve(spec);

    SearchStats pre;
    std::array<std::uint64_t, kReasons> pre_pruned{};
    std::vector<Gaps> work;
    const std::int64_t lo_w = std::max<std::int64_t>(spec.min_width, kDim);
    // |Gamma_0 - Gamma_5| <= 10 maxWeight bounds c1 * width
    const std::int64_t min_c1 = on.kmask ? std::countr_zero(on.kmask) : 1;
    for (std::int64_t width = lo_w; width <= spec.max_width; ++width) {
        Gaps g{};
        for (g[0] = 1; g[0] <= width - 4; ++g[0])
            for (g[1] = 1; g[0] + g[1] <= width - 3; ++g[1])
                for (g[2] = 1; g[0] + g[1] + g[2] <= width - 2; ++g[2])
                    for (g[3] = 1; g[0] + g[1] + g[2] + g[3] <= width - 1; ++g[3]) {
                        g[4] = width - g[0] - g[1] - g[2] - g[3];
                        if (on.symmetry && reversed(g) < g) {
                            ++pre_pruned[kSymmetry];
                        } else if (on.extremal && (g[0] > spec.max_weight || g[4] > spec.max_weight)) {
                            ++pre_pruned[kExtremal];
                        } else if (on.width && width * min_c1 > 2 * kDim * spec.max_weight) {
                            ++pre_pruned[kWidth];
                        } else if (!gaps_pass_filters(g, spec)) {
                            ++pre_pruned[kFilter];
                        } else {
                            work.push_back(g);
                        }
                    }
    }
    for (int r = 0; r < kReasons; ++r) {
        if (pre_pruned[r]) pre.pruned[kReasonNames[r]] += pre_pruned[r];
    }

    std::vector<std::vector<Configuration>> found(work.size());
    std::vector<SearchStats> stats(work.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> budget{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= work.size() || failed.load()) return;
            try {
                Counters counters;
                GapSearch gs(spec, on, work[i], counters, budget);
                gs.run(found[i]);
                counters.flush();
                counters.stats.gap_vectors = 1;
                stats[i] = std::move(counters.stats);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    const int threads = std::max(1, spec.threads > 0 ? spec.threads : default_thread_count());
    if (threads == 1 || work.size() < 2) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        const auto n = std::min<std::size_t>(static_cast<std::size_t>(threads), work.size());
        for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    SearchResult result;
    result.stats = pre;
    for (std::size_t i = 0; i < work.size(); ++i) {
        result.stats += stats[i];
        for (auto& c : found[i]) result.configurations.push_back(std::move(c));
    }
    auto& cs = result.configurations;
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<std::vector<Configuration>> group_by_weight_system(const std::vector<Configuration>& cs) {
    std::vector<std::vector<Configuration>> groups;
    std::map<std::string, std::size_t> index;
    for (const auto& c : cs) {
        const auto key = weight_system_key(c);
        auto [it, inserted] = index.emplace(key, groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(c);
    }
    for (auto& g : groups) std::sort(g.begin(), g.end());
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return groups;
}

bool carries_largest(const Configuration& c, int lo, int hi) {
    return weight_between(c, lo, hi, c.max_weight());
}

nlohmann::json to_json(const SearchSpec& spec) {
    using nlohmann::json;
    json rules = json::array();
    for (int r = 0; r < kRuleCount; ++r) {
        if (spec.rules & rule_bit(static_cast<Rule>(r))) rules.push_back(rule_name(static_cast<Rule>(r)));
    }
    json pairs = json::array();
    for (auto [lo, hi] : spec.largest_from) pairs.push_back({lo, hi});
    const auto& t = spec.pruning;
    json j = {{"maxWeight", spec.max_weight},
              {"maxWidth", spec.max_width},
              {"minWidth", spec.min_width},
              {"c1", spec.c1 ? json(*spec.c1) : json(nullptr)},
              {"largestFrom", pairs},
              {"requireEffective", spec.require_effective},
              {"symmetryGaps", spec.symmetry_gaps},
              {"fixedGaps", spec.fixed_gaps ? json(*spec.fixed_gaps) : json(nullptr)},
              {"requireMaxWeight", spec.require_max_weight},
              {"rules", rules},
              {"pruning",
               {{"divisibility", t.divisibility},
                {"extremal", t.extremal},
                {"c1", t.c1},
                {"mod", t.mod},
                {"symmetry", t.symmetry},
                {"width", t.width}}},
              {"nodeLimit", spec.node_limit ? json(*spec.node_limit) : json(nullptr)}};
    return j;
}

SearchSpec spec_from_json(const nlohmann::json& j) {
    SearchSpec s;
    try {
        s.max_weight = j.value("maxWeight", s.max_weight);
        s.max_width = j.value("maxWidth", s.max_width);
        s.min_width = j.value("minWidth", s.min_width);
        if (j.contains("c1") && !j["c1"].is_null()) s.c1 = j["c1"].get<std::int64_t>();
        if (j.contains("largestFrom")) {
            for (const auto& p : j["largestFrom"]) s.largest_from.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        }
        s.require_effective = j.value("requireEffective", false);
        s.symmetry_gaps = j.value("symmetryGaps", false);
        if (j.contains("fixedGaps") && !j["fixedGaps"].is_null()) {
            s.fixed_gaps = j["fixedGaps"].get<std::array<std::int64_t, kDim>>();
        }
        s.require_max_weight = j.value("requireMaxWeight", false);
        if (j.contains("rules")) {
            s.rules = 0;
            for (const auto& r : j["rules"]) {
                auto rule = rule_from_name(r.get<std::string>());
                if (!rule) throw ParseError("unknown rule " + r.get<std::string>());
                s.rules |= rule_bit(*rule);
            }
        }
        if (j.contains("pruning")) {
            const auto& p = j["pruning"];
            auto& t = s.pruning;
            t.divisibility = p.value("divisibility", t.divisibility);
            t.extremal = p.value("extremal", t.extremal);
            t.c1 = p.value("c1", t.c1);
            t.mod = p.value("mod", t.mod);
            t.symmetry = p.value("symmetry", t.symmetry);
            t.width = p.value("width", t.width);
        }
        if (j.contains("nodeLimit") && !j["nodeLimit"].is_null()) s.node_limit = j["nodeLimit"].get<std::uint64_t>();
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed search spec: ") + ex.what());
    }
    return s;
}

nlohmann::json to_json(const SearchStats& s, bool timing) {
    nlohmann::json j = {{"gapVectors", s.gap_vectors}, {"nodes", s.nodes}, {"leaves", s.leaves}, {"pruned", s.pruned}};
    if (timing) j["wallSeconds"] = s.wall_seconds;
    return j;
}

nlohmann::json to_json(const SearchResult& r, bool timing) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : r.configurations) cs.push_back(to_json(c));
    return {{"count", r.configurations.size()},
            {"weightSystems", group_by_weight_system(r.configurations).size()},
            {"configurations", cs},
            {"stats", to_json(r.stats, timing)}};
}

} // namespace hamfix
