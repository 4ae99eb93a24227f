#pragma once

// The cross-validation matrix behind `kloo verify all`: every closed form is
// compared with its brute-force or alternate-route counterpart on all instances
// inside the requested bounds.

#include <algorithm>
#include <string>
#include <vector>

#include "kloo/charsums.hpp"
#include "kloo/coset_codes.hpp"
#include "kloo/field.hpp"
#include "kloo/moments.hpp"
#include "kloo/orthogroup.hpp"
#include "kloo/report.hpp"

namespace kloo {

struct VerifyOptions {
    int max_r = 2;         ///< field degrees 1..max_r
    int max_n = 2;         ///< groups O+(2n, q) with n <= max_n are enumerated when within budget
    int tier = 1;          ///< tier 2 raises the bounds to at least r = 3, n = 3
    unsigned h_max = 10;   ///< moment exponents checked by the recursions
};

namespace detail {

inline std::string qn(const GaloisField& f, int n) {
    return "q=" + std::to_string(f.order()) + ",n=" + std::to_string(n);
}

inline void verify_field(const GaloisField& f, Report& rep) {
    const std::string p = "q=" + std::to_string(f.order());
    std::size_t ones = 0;
    for (FieldElement x : f.elements()) ones += static_cast<std::size_t>(f.trace(x));
    rep.expect_eq("field.trace_balance", p, static_cast<std::size_t>(f.order() / 2), ones);
    bool orth = true;
    for (FieldElement c : f.elements()) {
        long s = 0;
        for (FieldElement x : f.elements()) s += f.lambda(f.mul(c, x));
        orth = orth && s == (c.is_zero() ? static_cast<long>(f.order()) : 0);
    }
    rep.expect_true("field.lambda_orthogonality", p, orth);
    const auto img = f.artin_schreier_image();
    bool zero_trace = std::all_of(img.begin(), img.end(), [&](FieldElement x) { return f.trace(x) == 0; });
    rep.expect_true("field.artin_schreier", p, img.size() == f.order() / 2 && zero_trace);
}

inline void verify_charsums(const GaloisField& f, Report& rep) {
    const std::string p = "q=" + std::to_string(f.order());
    const auto table = kloosterman_table(f);
    bool weil = true;
    for (std::uint32_t a = 1; a < f.order(); ++a)
        weil = weil && table[a] * table[a] <= 4 * static_cast<std::int64_t>(f.order());
    rep.expect_true("charsums.weil_bound", p, weil);
    if (f.degree() >= 2) {
        const auto range = kloosterman_range(f);
        const auto support = kloosterman_support(f);
        rep.expect_true("charsums.range", p, range == support);
    }
    const auto as_image = f.artin_schreier_image();
    const FieldElement* b_out = nullptr;
    FieldElement b_store;
    for (FieldElement b : f.elements()) {
        if (std::find(as_image.begin(), as_image.end(), b) == as_image.end()) {
            b_store = b;
            b_out = &b_store;
            break;
        }
    }
    Report ids;
    for (FieldElement a : f.nonzero_elements()) {
        ids.merge(verify_carlitz(f, a));
        for (unsigned s = 1; s <= static_cast<unsigned>(f.degree()); ++s) ids.merge(verify_power_invariance(f, a, s));
        ids.merge(verify_theta_identities(f, a, b_out));
    }
    for (FieldElement beta : f.elements())
        for (int m = 1; m <= 2; ++m) ids.merge(verify_twisted_sum(f, beta, m));
    // Collapse per-element checks into one line per identity.
    std::vector<std::string> names;
    for (const auto& c : ids.checks)
        if (std::find(names.begin(), names.end(), c.name) == names.end()) names.push_back(c.name);
    for (const auto& name : names) {
        std::size_t total = 0, bad = 0;
        std::string first_bad;
        for (const auto& c : ids.checks) {
            if (c.name != name) continue;
            ++total;
            if (!c.pass && first_bad.empty()) first_bad = c.parameters + ": expected " + c.expected + ", got " + c.actual;
            bad += c.pass ? 0 : 1;
        }
        rep.checks.push_back({name, p + ",cases=" + std::to_string(total), "0 failures",
                              bad ? std::to_string(bad) + " failures, first " + first_bad : "0 failures", bad == 0});
    }
    for (int t = 0; t <= 3; ++t) {
        if (gl_order(f.order(), static_cast<unsigned>(t)) > kGlBudget) break;
        bool agree = true;
        for (FieldElement a : f.nonzero_elements()) {
            const BigInt rec = kloosterman_gl_recursive(f, t, a);
            agree = agree && rec == kloosterman_gl_closed_form(f, t, a) && rec == kloosterman_gl_brute_force(f, t, a);
        }
        rep.expect_true("charsums.gl_methods", p + ",t=" + std::to_string(t), agree);
    }
}

inline void verify_group(const GaloisField& f, int n, Report& rep) {
    const std::string p = qn(f, n);
    const GroupCounts gc = group_counts(f.order(), n);
    rep.merge(gc.identities);
    const auto parabolic = enumerate_parabolic(f, n);
    rep.expect_eq("orthogroup.parabolic_size", p, gc.parabolic, BigInt(parabolic.size()));
    BigInt union_size = 0;
    BigInt gauss = 0;
    for (int r = 0; r <= n; ++r) {
        const std::string pr = p + ",r=" + std::to_string(r);
        const BruhatCell cell = bruhat_cell(f, n, r, parabolic);
        union_size += cell.size();
        rep.expect_eq("orthogroup.cell_size", pr, gc.cells[static_cast<std::size_t>(r)], BigInt(cell.size()));
        rep.expect_eq("orthogroup.a_r_size", pr, gc.a_r[static_cast<std::size_t>(r)],
                      BigInt(a_r_subgroup(f, n, r, parabolic).size()));
        for (FieldElement c : f.nonzero_elements()) {
            const BigInt brute = exp_sum_cell_brute_force(cell, c);
            rep.expect_eq("orthogroup.exp_sum_cell", pr + ",c=" + c.hex(), exp_sum_cell_formula(f, n, r, c), brute);
            if (c == f.one()) gauss += brute;
        }
    }
    rep.expect_eq("orthogroup.group_union", p, gc.group_order, union_size);
    rep.expect_eq("orthogroup.gauss_sum", p, gauss_sum_oplus(f, n, f.one()), gauss);
}

inline std::vector<DoubleCosetFamily> families_up_to(const GaloisField& f, int max_n) {
    std::vector<DoubleCosetFamily> out;
    for (int n = 1; n <= max_n; ++n) {
        if (n % 2 == 0) {
            out.emplace_back(1, Sign::plus, n, f);
            out.emplace_back(2, Sign::plus, n, f);
        } else {
            out.emplace_back(1, Sign::minus, n, f);
            if (n >= 3) out.emplace_back(2, Sign::minus, n, f);
        }
    }
    return out;
}

inline void verify_codes(const DoubleCosetFamily& fam, Report& rep) {
    const GaloisField& f = fam.field();
    const bool enumerated = is_enumerable(f, fam.n());
    const std::string p = fam.label() + (enumerated ? "" : ",formula-only");
    const auto k = family_constants(fam);
    const auto formula = trace_multiplicities_formula(fam);
    rep.expect_eq("coset_codes.length", p, cell_order(fam.q(), fam.n(), fam.sigma_index()), k.n);
    rep.expect_true("coset_codes.trace_sum_zero", p, formula.weighted_sum() == 0 && formula.total() == k.n);

    std::size_t kernel_size = dual_kernel(formula).size();
    if (enumerated) {
        const BruhatCell cell = materialize(fam);
        rep.expect_true("coset_codes.trace_multiplicities", p, trace_multiplicities(cell) == formula);
        rep.merge(verify_trace_count_bridge(cell));
        bool weights = true;
        for (FieldElement a : f.nonzero_elements()) {
            const BigInt direct = hamming_weight(dual_codeword(cell, a));
            weights = weights && direct == dual_weight_formula(fam, a);
            if (fam.index() == 2) weights = weights && direct == dual_weight_formula(fam, a, WeightMode::formula_k2);
        }
        rep.expect_true("coset_codes.dual_weights", p, weights);
        const auto kernel = dual_kernel(cell);
        rep.expect_eq("coset_codes.kernel_routes", p, kernel_size, kernel.size());
        kernel_size = kernel.size();
    }
    rep.expect_eq("coset_codes.injectivity", p, injective_expected(fam), kernel_size == 1);
    if (!injective_expected(fam)) rep.expect_eq("coset_codes.kernel_size", p, std::size_t{2}, kernel_size);

    if (k.n > 1000) return;
    const auto dist = weight_distribution(formula);
    bool symmetric = true;
    const std::size_t len = dist.coefficients.size();
    for (std::size_t j = 0; j < len; ++j) symmetric = symmetric && dist.coefficients[j] == dist.coefficients[len - 1 - j];
    rep.expect_true("coset_codes.distribution_symmetry", p, symmetric);
    const int dual_dim = dual_dimension(f, kernel_size);
    rep.expect_eq("coset_codes.distribution_total", p, ipow(BigInt(2), static_cast<unsigned>(k.n - dual_dim)), dist.total());
    rep.expect_true("coset_codes.macwilliams", p, weight_distribution_macwilliams(fam) == dist);
    const auto dual = dual_distribution(fam, kernel_size);
    for (unsigned h = 0; h <= 10; ++h) {
        Report pl = pless_check(dual, dist, dual_dim, h);
        for (auto& c : pl.checks) c.parameters = p + "," + c.parameters;
        rep.merge(pl);
    }
}

inline void verify_recursions(const GaloisField& f, unsigned h_max, Report& rep) {
    const auto mk = moments(f, 1, 2 * h_max);
    const auto mk2 = moments(f, 2, h_max);
    for (const auto& fam : families_up_to(f, 3)) {
        if (!recursion_admissible(fam)) continue;
        const auto inst = RecursionInstance::make(fam, h_max);
        const std::string p = fam.label() + ",h<=" + std::to_string(h_max);
        if (fam.index() == 1) {
            const auto rec = recursive_moments(inst, MomentKind::kloosterman);
            rep.expect_true("moments.mk_recursive", p, std::equal(rec.begin(), rec.end(), mk.begin()));
        } else {
            const auto rec2 = recursive_moments(inst, MomentKind::kloosterman2);
            rep.expect_true("moments.mk2_recursive", p, rec2 == mk2);
            const auto even = recursive_moments(inst, MomentKind::kloosterman_even);
            bool ok = true;
            for (unsigned h = 0; h <= h_max; ++h) ok = ok && even[h] == mk[2 * h];
            rep.expect_true("moments.mk_even_recursive", p, ok);
        }
        for (unsigned h = 0; h <= 4; ++h) rep.merge(verify_lhs_expansion(fam, h));
    }
}

}  // namespace detail

/// Runs the full matrix within the bounds; checks are ordered by name.
inline Report verify_all(VerifyOptions opt) {
    if (opt.tier >= 2) {
        opt.max_r = std::max(opt.max_r, 3);
        opt.max_n = std::max(opt.max_n, 3);
    }
    if (opt.max_r < 1 || opt.max_r > GaloisField::kMaxDegree) {
        throw ParameterError("r out of supported range: max-r = " + std::to_string(opt.max_r));
    }
    if (opt.max_n < 1) throw ParameterError("max-n must be >= 1");
    Report rep;
    for (int r = 1; r <= opt.max_r; ++r) {
        const GaloisField f(r);
        detail::verify_field(f, rep);
        detail::verify_charsums(f, rep);
        for (int n = 1; n <= opt.max_n; ++n)
            if (is_enumerable(f, n)) detail::verify_group(f, n, rep);
        for (const auto& fam : detail::families_up_to(f, std::max(opt.max_n, 3))) {
            if (fam.n() > opt.max_n && is_enumerable(f, fam.n())) continue;  // enumeration gated by max-n
            detail::verify_codes(fam, rep);
        }
        detail::verify_recursions(f, opt.h_max, rep);
    }
    rep.sort_by_name();
    return rep;
}

}  // namespace kloo
