#pragma once

// Independent reference implementations used to check the library. None of
// these call the DFS oracle: they enumerate the full box product.

#include <silp/graph.hh>
#include <silp/instance.hh>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace silp::testing
{
    using Point = std::vector<std::int64_t>;

    /// Every feasible assignment, in lexicographic order of declaration.
    inline auto brute_force_solutions(const IlpInstance & instance) -> std::vector<Assignment>
    {
        std::vector<Assignment> result;
        auto n = instance.num_vars();
        Assignment a(n);
        std::size_t i = 0;
        for (const auto & v : instance.vars())
            a[i++] = v.lower;
        while (true) {
            bool ok = std::all_of(instance.constraints().begin(), instance.constraints().end(),
                [&](const LinearConstraint & c) { return c.satisfied_by(a); });
            if (ok)
                result.push_back(a);
            std::size_t pos = n;
            while (true) {
                if (pos == 0)
                    return result;
                --pos;
                const auto & v = instance.vars()[VarId{static_cast<std::uint32_t>(pos)}];
                if (++a[pos] <= v.upper)
                    break;
                a[pos] = v.lower;
            }
        }
    }

    inline auto project(const std::vector<Assignment> & solutions, const std::vector<VarId> & onto) -> std::vector<Point>
    {
        std::set<Point> points;
        for (const auto & s : solutions) {
            Point p;
            for (auto id : onto)
                p.push_back(s[id.index]);
            points.insert(p);
        }
        return {points.begin(), points.end()};
    }

    inline auto first_vars(std::size_t n) -> std::vector<VarId>
    {
        std::vector<VarId> ids;
        for (std::uint32_t i = 0; i < n; ++i)
            ids.push_back(VarId{i});
        return ids;
    }

    /// All points of {0..d-1}^q in lexicographic order.
    inline auto box_points(std::size_t q, std::int64_t d) -> std::vector<Point>
    {
        std::vector<Point> result;
        Point p(q, 0);
        while (true) {
            result.push_back(p);
            std::size_t pos = q;
            while (true) {
                if (pos == 0)
                    return result;
                --pos;
                if (++p[pos] < d)
                    break;
                p[pos] = 0;
            }
        }
    }

    /// Clique check by subset enumeration over bitmasks.
    inline auto naive_has_clique(const Graph & g, int k) -> bool
    {
        int n = g.n_vertices();
        if (k > n)
            return false;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (std::popcount(mask) != k)
                continue;
            bool ok = true;
            for (int u = 0; u < n && ok; ++u)
                for (int v = u + 1; v < n && ok; ++v)
                    if ((mask >> u & 1) && (mask >> v & 1) && ! g.has_edge(u, v))
                        ok = false;
            if (ok)
                return true;
        }
        return false;
    }

    struct RandomSpec
    {
        std::size_t n = 4;
        std::int64_t d = 2;
        std::size_t m = 4;
        std::size_t r = 3;
        int coef_range = 5;
        int rhs_range = 10;
    };

    /// Random r-sparse instance on boxes {0..d-1}. Rows have 1..r distinct
    /// variables with nonzero integer coefficients.
    inline auto random_instance(std::mt19937_64 & rng, const RandomSpec & spec) -> IlpInstance
    {
        InstanceBuilder b;
        for (std::size_t i = 0; i < spec.n; ++i)
            b.add_var("x" + std::to_string(i), 0, spec.d - 1);
        std::uniform_int_distribution<int> coef(-spec.coef_range, spec.coef_range - 1);
        std::uniform_int_distribution<int> rhs(-spec.rhs_range, spec.rhs_range);
        std::uniform_int_distribution<std::size_t> size(1, std::min(spec.r, spec.n));
        for (std::size_t j = 0; j < spec.m; ++j) {
            std::vector<std::uint32_t> ids(spec.n);
            for (std::uint32_t i = 0; i < spec.n; ++i)
                ids[i] = i;
            std::shuffle(ids.begin(), ids.end(), rng);
            ids.resize(size(rng));
            std::vector<Term> terms;
            for (auto id : ids) {
                auto c = coef(rng);
                terms.emplace_back(VarId{id}, Rational{c >= 0 ? c + 1 : c});
            }
            b.add_row(terms, Rational{rhs(rng)}, "c" + std::to_string(j));
        }
        return b.build(static_cast<std::int64_t>(spec.r), spec.d);
    }

    inline auto graph_from_mask(int n, unsigned mask) -> Graph
    {
        Graph g{n};
        int bit = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v, ++bit)
                if (mask >> bit & 1)
                    g.add_edge(u, v);
        return g;
    }

    /// One representative per isomorphism class of simple graphs on n <= 5
    /// vertices, canonical form = lexicographically smallest edge mask over
    /// all vertex permutations.
    inline auto nonisomorphic_graphs(int n) -> std::vector<Graph>
    {
        int pairs = n * (n - 1) / 2;
        std::vector<int> perm(n);
        std::set<unsigned> canon;
        for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
            auto g = graph_from_mask(n, mask);
            unsigned best = ~0u;
            for (int i = 0; i < n; ++i)
                perm[i] = i;
            do {
                unsigned m = 0;
                int bit = 0;
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v, ++bit)
                        if (g.has_edge(perm[u], perm[v]))
                            m |= 1u << bit;
                best = std::min(best, m);
            } while (std::next_permutation(perm.begin(), perm.end()));
            canon.insert(best);
        }
        std::vector<Graph> result;
        for (auto m : canon)
            result.push_back(graph_from_mask(n, m));
        return result;
    }

    inline auto random_graph(std::mt19937_64 & rng, int n, double p) -> Graph
    {
        std::bernoulli_distribution edge(p);
        Graph g{n};
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (edge(rng))
                    g.add_edge(u, v);
        return g;
    }
}
