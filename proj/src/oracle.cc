#include <silp/error.hh>
#include <silp/oracle.hh>

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

using namespace silp;

using std::int64_t;
using std::optional;
using std::string;
using std::to_string;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace
{
    constexpr int64_t magnitude_limit = int64_t{1} << 62;
    constexpr std::size_t stop_search = std::numeric_limits<std::size_t>::max();

    auto floor_div(int64_t a, int64_t b) -> int64_t
    {
        int64_t q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0)))
            --q;
        return q;
    }

    auto ceil_div(int64_t a, int64_t b) -> int64_t
    {
        int64_t q = a / b;
        if ((a % b != 0) && ((a < 0) == (b < 0)))
            ++q;
        return q;
    }

    struct CompiledRow
    {
        vector<std::pair<uint32_t, int64_t>> terms;
        int64_t rhs = 0;
    };

    struct Domains
    {
        vector<int64_t> lo, hi;
    };

    struct Change
    {
        uint32_t var;
        int64_t lo, hi;
    };

    /// Per-search mutable state: one domain array restored from a trail on
    /// backtrack, so memory stays linear in the instance.
    struct Scratch
    {
        vector<Change> trail;
        vector<uint32_t> queue;
        vector<char> queued;
    };

    enum class Step
    {
        Continue,
        Stop
    };

    /// Rows scaled to integer coefficients. Every partial activity is
    /// guaranteed to fit in 63 bits, so the search runs in int64.
    class Engine
    {
    public:
        Engine(const IlpInstance & instance, const SearchConfig & config, const vector<VarId> & leading) :
            _config(config)
        {
            auto n = instance.num_vars();
            _initial.lo.resize(n);
            _initial.hi.resize(n);
            uint32_t idx = 0;
            for (const auto & v : instance.vars()) {
                if (v.lower <= -magnitude_limit || v.upper >= magnitude_limit)
                    throw Error{ErrorCode::UnboundedVariable, "variable " + v.name + " has an effectively unbounded box"};
                _initial.lo[idx] = v.lower;
                _initial.hi[idx] = v.upper;
                ++idx;
            }

            _rows_of_var.resize(n);
            for (const auto & row : instance.constraints())
                compile(instance, row);

            build_order(leading);
        }

        [[nodiscard]] auto trivially_infeasible() const -> bool { return _trivially_infeasible; }
        [[nodiscard]] auto order() const -> const vector<uint32_t> & { return _order; }
        [[nodiscard]] auto initial() const -> const Domains & { return _initial; }
        [[nodiscard]] auto num_rows() const -> std::size_t { return _rows.size(); }

        auto propagate_all(Domains & d) const -> bool
        {
            vector<uint32_t> all(_rows.size());
            std::iota(all.begin(), all.end(), 0);
            Scratch scratch;
            return propagate(d, all, scratch);
        }

        /// Depth-first search from position `pos`. The callback receives each
        /// complete assignment and returns the order position whose frame
        /// resumes with its next value; deeper frames unwind.
        template <typename OnSolution>
        auto search(std::size_t pos, Domains d, uint64_t & nodes, OnSolution & on_solution, std::size_t & unwind, bool & exhausted) const -> Step
        {
            Scratch scratch;
            return dfs(pos, d, scratch, nodes, on_solution, unwind, exhausted);
        }

    private:
        template <typename OnSolution>
        auto dfs(std::size_t pos, Domains & d, Scratch & scratch, uint64_t & nodes, OnSolution & on_solution, std::size_t & unwind,
            bool & exhausted) const -> Step
        {
            if (pos == _order.size()) {
                unwind = on_solution(d.lo);
                return unwind == stop_search ? Step::Stop : Step::Continue;
            }

            auto var = _order[pos];
            auto lower = d.lo[var], upper = d.hi[var];
            for (int64_t value = lower; value <= upper; ++value) {
                if (nodes >= _config.node_budget) {
                    exhausted = true;
                    return Step::Stop;
                }
                ++nodes;

                auto mark = scratch.trail.size();
                scratch.trail.push_back({var, d.lo[var], d.hi[var]});
                d.lo[var] = d.hi[var] = value;
                bool ok = _config.propagate ? propagate(d, _rows_of_var[var], scratch) : check_completed(d, pos);
                auto step = ok ? dfs(pos + 1, d, scratch, nodes, on_solution, unwind, exhausted) : Step::Continue;
                undo(d, scratch, mark);
                if (step == Step::Stop)
                    return Step::Stop;
                if (! ok)
                    continue;
                if (unwind < pos)
                    return Step::Continue;
                if (unwind == pos)
                    unwind = _order.size() + 1;
            }
            return Step::Continue;
        }

        static auto undo(Domains & d, Scratch & scratch, std::size_t mark) -> void
        {
            while (scratch.trail.size() > mark) {
                auto c = scratch.trail.back();
                scratch.trail.pop_back();
                d.lo[c.var] = c.lo;
                d.hi[c.var] = c.hi;
            }
        }

        auto compile(const IlpInstance & instance, const LinearConstraint & row) -> void
        {
            BigInt scale = 1;
            for (const auto & [_, coef] : row.terms())
                scale = boost::multiprecision::lcm(scale, coef.denominator());
            scale = boost::multiprecision::lcm(scale, row.rhs().denominator());

            CompiledRow compiled;
            BigInt bound = 0;
            for (const auto & [id, coef] : row.terms()) {
                BigInt a = coef.numerator() * (scale / coef.denominator());
                const auto & v = instance.vars()[id];
                BigInt reach = std::max(boost::multiprecision::abs(BigInt{v.lower}), boost::multiprecision::abs(BigInt{v.upper}));
                bound += boost::multiprecision::abs(a) * reach;
                if (boost::multiprecision::abs(a) >= magnitude_limit)
                    throw Error{ErrorCode::UnsupportedMagnitude, "coefficient too large in row " + row.tag()};
                compiled.terms.emplace_back(id.index, static_cast<int64_t>(a));
            }
            BigInt rhs = (row.rhs() * Rational{scale}).floor();
            if (boost::multiprecision::abs(rhs) >= magnitude_limit)
                // the row is either always satisfied or never within the boxes
                rhs = rhs > 0 ? BigInt{bound} : BigInt{-bound - 1};
            bound += boost::multiprecision::abs(rhs);
            if (bound >= magnitude_limit)
                throw Error{ErrorCode::UnsupportedMagnitude, "row " + row.tag() + " activity exceeds 62 bits"};
            compiled.rhs = static_cast<int64_t>(rhs);

            if (compiled.terms.empty()) {
                if (compiled.rhs < 0)
                    _trivially_infeasible = true;
                return;
            }

            auto index = static_cast<uint32_t>(_rows.size());
            for (auto [v, _] : compiled.terms)
                _rows_of_var[v].push_back(index);
            _rows.push_back(std::move(compiled));
        }

        auto build_order(const vector<VarId> & leading) -> void
        {
            auto n = _initial.lo.size();
            vector<bool> placed(n, false);
            for (auto id : leading) {
                if (id.index >= n)
                    throw Error{ErrorCode::UnknownVariable, "projection variable #" + to_string(id.index)};
                if (! placed[id.index]) {
                    _order.push_back(id.index);
                    placed[id.index] = true;
                }
            }
            vector<uint32_t> rest;
            for (uint32_t v = 0; v < n; ++v)
                if (! placed[v])
                    rest.push_back(v);
            if (_config.order == VarOrder::MostConstrainedFirst)
                std::stable_sort(rest.begin(), rest.end(), [&](uint32_t a, uint32_t b) {
                    return _rows_of_var[a].size() > _rows_of_var[b].size();
                });
            _order.insert(_order.end(), rest.begin(), rest.end());

            _position.assign(n, 0);
            for (std::size_t p = 0; p < _order.size(); ++p)
                _position[_order[p]] = p;
            _completed_at.assign(n, {});
            for (uint32_t r = 0; r < _rows.size(); ++r) {
                std::size_t last = 0;
                for (auto [v, _] : _rows[r].terms)
                    last = std::max(last, _position[v]);
                _completed_at[last].push_back(r);
            }
        }

        auto check_completed(const Domains & d, std::size_t pos) const -> bool
        {
            for (auto r : _completed_at[pos]) {
                int64_t act = 0;
                for (auto [v, a] : _rows[r].terms)
                    act += a * d.lo[v];
                if (act > _rows[r].rhs)
                    return false;
            }
            return true;
        }

        auto propagate(Domains & d, const vector<uint32_t> & seeds, Scratch & scratch) const -> bool
        {
            auto & queue = scratch.queue;
            auto & queued = scratch.queued;
            queued.resize(_rows.size(), 0);
            queue.assign(seeds.begin(), seeds.end());
            for (auto r : queue)
                queued[r] = 1;
            auto fail = [&] {
                for (auto r : queue)
                    queued[r] = 0;
                queue.clear();
                return false;
            };

            while (! queue.empty()) {
                auto r = queue.back();
                queue.pop_back();
                queued[r] = 0;
                const auto & row = _rows[r];

                int64_t min_act = 0;
                for (auto [v, a] : row.terms)
                    min_act += a > 0 ? a * d.lo[v] : a * d.hi[v];
                if (min_act > row.rhs)
                    return fail();

                for (auto [v, a] : row.terms) {
                    int64_t own = a > 0 ? a * d.lo[v] : a * d.hi[v];
                    int64_t slack = row.rhs - (min_act - own);
                    bool changed = false;
                    if (a > 0) {
                        auto bound = floor_div(slack, a);
                        if (bound < d.hi[v]) {
                            scratch.trail.push_back({v, d.lo[v], d.hi[v]});
                            d.hi[v] = bound;
                            changed = true;
                        }
                    }
                    else {
                        auto bound = ceil_div(slack, a);
                        if (bound > d.lo[v]) {
                            scratch.trail.push_back({v, d.lo[v], d.hi[v]});
                            d.lo[v] = bound;
                            changed = true;
                        }
                    }
                    if (changed) {
                        if (d.lo[v] > d.hi[v])
                            return fail();
                        for (auto other : _rows_of_var[v])
                            if (other != r && ! queued[other]) {
                                queued[other] = 1;
                                queue.push_back(other);
                            }
                    }
                }
            }
            return true;
        }

        SearchConfig _config;
        Domains _initial;
        vector<CompiledRow> _rows;
        vector<vector<uint32_t>> _rows_of_var;
        vector<uint32_t> _order;
        vector<std::size_t> _position;
        vector<vector<uint32_t>> _completed_at;
        bool _trivially_infeasible = false;
    };

    auto root_domains(const Engine & engine, const SearchConfig & config, bool & ok) -> Domains
    {
        Domains d = engine.initial();
        ok = ! engine.trivially_infeasible();
        if (ok && config.propagate)
            ok = engine.propagate_all(d);
        return d;
    }

    auto solve_sequential(const Engine & engine, const SearchConfig & config) -> SolveOutcome
    {
        SolveOutcome outcome;
        bool ok = false;
        Domains root = root_domains(engine, config, ok);
        if (! ok)
            return outcome;

        auto n = engine.order().size();
        std::set<Assignment> found;
        auto on_solution = [&](const vector<int64_t> & values) -> std::size_t {
            if (! outcome.witness)
                outcome.witness = values;
            if (! config.find_all)
                return stop_search;
            found.insert(values);
            return n + 1;
        };

        std::size_t unwind = n + 1;
        bool exhausted = false;
        engine.search(0, root, outcome.nodes, on_solution, unwind, exhausted);

        if (exhausted) {
            outcome.status = SolveStatus::BudgetExhausted;
            outcome.solutions.assign(found.begin(), found.end());
            return outcome;
        }
        outcome.status = outcome.witness ? SolveStatus::Feasible : SolveStatus::Infeasible;
        outcome.solutions.assign(found.begin(), found.end());
        return outcome;
    }

    /// Splits the first branching variable's values across workers. The
    /// lowest feasible value wins, so the witness matches the sequential one.
    auto solve_parallel(const Engine & engine, const SearchConfig & config) -> SolveOutcome
    {
        SolveOutcome outcome;
        bool ok = false;
        Domains root = root_domains(engine, config, ok);
        if (! ok)
            return outcome;
        if (engine.order().empty())
            return solve_sequential(engine, config);

        auto first = engine.order()[0];
        auto lower = root.lo[first], upper = root.hi[first];
        auto count = static_cast<std::size_t>(upper - lower + 1);

        struct Slot
        {
            SolveStatus status = SolveStatus::Infeasible;
            optional<Assignment> witness;
            uint64_t nodes = 0;
        };
        vector<Slot> slots(count);
        std::atomic<std::size_t> next{0};

        auto worker = [&]() {
            while (true) {
                auto i = next.fetch_add(1);
                if (i >= count)
                    return;
                auto & slot = slots[i];
                Domains restricted = root;
                restricted.lo[first] = restricted.hi[first] = lower + static_cast<int64_t>(i);
                auto on_solution = [&](const vector<int64_t> & values) -> std::size_t {
                    slot.witness = values;
                    return stop_search;
                };
                std::size_t unwind = engine.order().size() + 1;
                bool exhausted = false;
                engine.search(0, restricted, slot.nodes, on_solution, unwind, exhausted);
                if (exhausted)
                    slot.status = SolveStatus::BudgetExhausted;
                else if (slot.witness)
                    slot.status = SolveStatus::Feasible;
            }
        };

        vector<std::thread> pool;
        for (unsigned t = 0; t < config.threads; ++t)
            pool.emplace_back(worker);
        for (auto & t : pool)
            t.join();

        for (const auto & slot : slots)
            outcome.nodes += slot.nodes;
        for (const auto & slot : slots) {
            if (slot.status == SolveStatus::BudgetExhausted) {
                outcome.status = SolveStatus::BudgetExhausted;
                return outcome;
            }
            if (slot.status == SolveStatus::Feasible) {
                outcome.status = SolveStatus::Feasible;
                outcome.witness = slot.witness;
                return outcome;
            }
        }
        outcome.status = SolveStatus::Infeasible;
        return outcome;
    }
}

auto silp::solve(const IlpInstance & instance, const SearchConfig & config) -> SolveOutcome
{
    if (config.node_budget == 0)
        throw std::invalid_argument{"node budget must be positive"};
    Engine engine{instance, config, {}};
    if (config.threads > 1 && ! config.find_all)
        return solve_parallel(engine, config);
    return solve_sequential(engine, config);
}

auto silp::enumerate_solutions(const IlpInstance & instance, const vector<VarId> & projection,
    const SearchConfig & config) -> vector<vector<int64_t>>
{
    if (config.node_budget == 0)
        throw std::invalid_argument{"node budget must be positive"};
    Engine engine{instance, config, projection};
    bool ok = false;
    Domains root = root_domains(engine, config, ok);
    if (! ok)
        return {};

    std::set<vector<int64_t>> found;
    auto width = std::set<VarId>(projection.begin(), projection.end()).size();
    auto on_solution = [&](const vector<int64_t> & values) -> std::size_t {
        vector<int64_t> point;
        point.reserve(width);
        for (auto id : projection)
            point.push_back(values[id.index]);
        found.insert(std::move(point));
        // resume at the last projection variable
        return width == 0 ? stop_search : width - 1;
    };

    uint64_t nodes = 0;
    std::size_t unwind = engine.order().size() + 1;
    bool exhausted = false;
    engine.search(0, root, nodes, on_solution, unwind, exhausted);
    if (exhausted)
        throw Error{ErrorCode::SpaceTooLarge, "enumeration exceeded " + to_string(config.node_budget) + " nodes"};
    return {found.begin(), found.end()};
}

namespace
{
    auto extend_clique(const Graph & g, int k, vector<int> & chosen, int next) -> bool
    {
        if (static_cast<int>(chosen.size()) == k)
            return true;
        for (int v = next; v < g.n_vertices(); ++v) {
            if (g.n_vertices() - v < k - static_cast<int>(chosen.size()))
                return false;
            bool adjacent = std::all_of(chosen.begin(), chosen.end(), [&](int u) { return g.has_edge(u, v); });
            if (! adjacent)
                continue;
            chosen.push_back(v);
            if (extend_clique(g, k, chosen, v + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    }
}

auto silp::has_k_clique(const Graph & graph, int k) -> optional<vector<int>>
{
    if (k < 1)
        throw Error{ErrorCode::BadK, "clique size must be at least 1, got " + to_string(k)};
    if (k > graph.n_vertices())
        return std::nullopt;
    vector<int> chosen;
    if (extend_clique(graph, k, chosen, 0))
        return chosen;
    return std::nullopt;
}
