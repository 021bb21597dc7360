#pragma once

// Exact sum-product over discrete variables by greedy variable elimination.
// Every variable has the same domain size; a factor's table is indexed with
// scope[0] as the fastest-varying digit.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include "catclust/error.hpp"

namespace catclust {

struct Factor {
    std::vector<std::size_t> scope;  // sorted, distinct
    std::vector<std::complex<double>> table;
};

namespace detail {

inline std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= base;
    return r;
}

// Multiplies `group` and sums out `var`.
inline Factor eliminate(const std::vector<const Factor*>& group, std::size_t var, std::size_t domain,
                        std::size_t maxScope) {
    std::vector<std::size_t> all;
    for (const auto* f : group) all.insert(all.end(), f->scope.begin(), f->scope.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.size() > maxScope) throw DomainError("factor elimination: intermediate table too large");

    Factor out;
    for (auto v : all)
        if (v != var) out.scope.push_back(v);
    out.table.assign(ipow(domain, out.scope.size()), {0.0, 0.0});

    // strides[f][p]: weight of digit p of `all` in factor f's index
    std::vector<std::vector<std::size_t>> strides(group.size(), std::vector<std::size_t>(all.size(), 0));
    for (std::size_t f = 0; f < group.size(); ++f) {
        std::size_t w = 1;
        for (auto v : group[f]->scope) {
            const auto p = static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), v) - all.begin());
            strides[f][p] = w;
            w *= domain;
        }
    }
    std::vector<std::size_t> outStride(all.size(), 0);
    {
        std::size_t w = 1;
        for (std::size_t p = 0; p < all.size(); ++p) {
            if (all[p] == var) continue;
            outStride[p] = w;
            w *= domain;
        }
    }

    const std::size_t total = ipow(domain, all.size());
    std::vector<std::size_t> digit(all.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::complex<double> prod{1.0, 0.0};
        for (std::size_t f = 0; f < group.size(); ++f) {
            std::size_t fi = 0;
            for (std::size_t p = 0; p < all.size(); ++p) fi += digit[p] * strides[f][p];
            prod *= group[f]->table[fi];
        }
        std::size_t oi = 0;
        for (std::size_t p = 0; p < all.size(); ++p) oi += digit[p] * outStride[p];
        out.table[oi] += prod;
        for (std::size_t p = 0; p < all.size(); ++p) {
            if (++digit[p] < domain) break;
            digit[p] = 0;
        }
    }
    return out;
}

}  // namespace detail

/// Sum over all assignments of the product of factors. Variables are
/// eliminated greedily by smallest intermediate scope, lowest index first on
/// ties, so the summation order is fixed.
inline std::complex<double> contractFactors(std::vector<Factor> factors, std::size_t variables, std::size_t domain,
                                            std::size_t maxScope = 10) {
    for (const auto& f : factors)
        if (f.table.size() != detail::ipow(domain, f.scope.size()))
            throw DomainError("factor table size does not match its scope");

    std::vector<bool> done(variables, false);
    for (std::size_t step = 0; step < variables; ++step) {
        std::size_t best = variables;
        std::size_t bestSize = 0;
        for (std::size_t v = 0; v < variables; ++v) {
            if (done[v]) continue;
            std::vector<std::size_t> all;
            for (const auto& f : factors)
                if (std::binary_search(f.scope.begin(), f.scope.end(), v))
                    all.insert(all.end(), f.scope.begin(), f.scope.end());
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            if (best == variables || all.size() < bestSize) {
                best = v;
                bestSize = all.size();
            }
        }
        std::vector<const Factor*> group;
        std::vector<Factor> rest;
        for (const auto& f : factors)
            if (std::binary_search(f.scope.begin(), f.scope.end(), best)) group.push_back(&f);
        Factor merged;
        if (group.empty()) {
            merged.table = {static_cast<double>(domain)};
        } else {
            merged = detail::eliminate(group, best, domain, maxScope);
        }
        for (auto& f : factors)
            if (!std::binary_search(f.scope.begin(), f.scope.end(), best)) rest.push_back(std::move(f));
        rest.push_back(std::move(merged));
        factors = std::move(rest);
        done[best] = true;
    }
    std::complex<double> total{1.0, 0.0};
    for (const auto& f : factors) total *= f.table.at(0);
    return total;
}

}  // namespace catclust
