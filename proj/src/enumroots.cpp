#include "pfr/enumroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pfr {

unsigned long long saturating_pow(unsigned long long base, unsigned exponent) {
    unsigned long long out = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (out > std::numeric_limits<unsigned long long>::max() / base)
            return std::numeric_limits<unsigned long long>::max();
        out *= base;
    }
    return out;
}

unsigned long long count_real_primary(const SpectrumSummary& summary, int p) {
    if (p < 2) throw error("p must exceed 1");
    if (summary.has_zero()) throw numerical_error("count requires a nonsingular matrix");
    const unsigned c = static_cast<unsigned>(summary.c);
    if (p % 2 == 1) return saturating_pow(static_cast<unsigned long long>(p), c);
    if (summary.r2 > 0) return 0;
    const unsigned long long reals = saturating_pow(2, static_cast<unsigned>(summary.r1));
    const unsigned long long pairs = saturating_pow(static_cast<unsigned long long>(p), c);
    if (reals != 0 && pairs > std::numeric_limits<unsigned long long>::max() / reals)
        return std::numeric_limits<unsigned long long>::max();
    return reals * pairs;
}

unsigned long long count_ev_positive_primary(const SpectrumSummary& summary, int p) {
    if (p < 2) throw error("p must exceed 1");
    if (summary.has_zero()) throw numerical_error("count requires a nonsingular matrix");
    if (summary.r1 < 1)
        throw numerical_error("no positive real eigenvalue: matrix is not primitive or "
                              "eventually positive");
    const unsigned c = static_cast<unsigned>(summary.c);
    if (p % 2 == 1) return saturating_pow(static_cast<unsigned long long>(p), c);
    if (summary.r2 > 0) return 0;
    const unsigned long long reals = saturating_pow(2, static_cast<unsigned>(summary.r1 - 1));
    const unsigned long long pairs = saturating_pow(static_cast<unsigned long long>(p), c);
    if (reals != 0 && pairs > std::numeric_limits<unsigned long long>::max() / reals)
        return std::numeric_limits<unsigned long long>::max();
    return reals * pairs;
}

namespace {

struct DistinctChoiceTable {
    // Distinct eigenvalue ids in first-appearance order, real blocks first.
    std::vector<int> real_ids;
    std::vector<int> pair_ids;
    std::vector<std::vector<int>> real_choices;                   // parallel to real_ids
    std::vector<std::vector<std::pair<int, int>>> pair_choices;   // parallel to pair_ids
};

// Per-distinct-eigenvalue choices broadcast to blocks keep the assignment
// primary by construction.
std::vector<BranchAssignment> enumerate_primary_assignments(const RealJordanDecomposition& d,
                                                            const DistinctChoiceTable& table,
                                                            int p) {
    std::vector<BranchAssignment> out;
    std::size_t combos = 1;
    for (const auto& ch : table.real_choices) {
        if (ch.empty()) return out;
        combos *= ch.size();
    }
    for (const auto& ch : table.pair_choices) {
        if (ch.empty()) return out;
        combos *= ch.size();
    }

    const std::size_t dims = table.real_ids.size() + table.pair_ids.size();
    std::vector<std::size_t> odometer(dims, 0);
    for (std::size_t step = 0; step < combos; ++step) {
        BranchAssignment a;
        a.p = p;
        a.primary = true;
        for (const RealBlockSpec& b : d.blocks) {
            if (b.kind == RealBlockSpec::Kind::real_eigen) {
                const auto it = std::find(table.real_ids.begin(), table.real_ids.end(), b.eigen_id);
                const std::size_t pos = static_cast<std::size_t>(it - table.real_ids.begin());
                a.real_indices.push_back(table.real_choices[pos][odometer[pos]]);
            } else {
                const auto it = std::find(table.pair_ids.begin(), table.pair_ids.end(), b.eigen_id);
                const std::size_t pos = static_cast<std::size_t>(it - table.pair_ids.begin());
                a.pair_indices.push_back(
                    table.pair_choices[pos][odometer[table.real_ids.size() + pos]]);
            }
        }
        out.push_back(std::move(a));
        // Advance odometer, last dimension fastest.
        for (std::size_t dim = dims; dim-- > 0;) {
            const std::size_t limit = dim < table.real_ids.size()
                                          ? table.real_choices[dim].size()
                                          : table.pair_choices[dim - table.real_ids.size()].size();
            if (++odometer[dim] < limit) break;
            odometer[dim] = 0;
        }
    }
    return out;
}

DistinctChoiceTable build_table(const RealJordanDecomposition& d, int p, bool pin_dominant) {
    DistinctChoiceTable table;
    const double rho = [&] {
        double m = 0.0;
        for (const DistinctEigenvalue& ev : d.summary.distinct) m = std::max(m, std::abs(ev.value));
        return m;
    }();
    for (const RealBlockSpec& b : d.blocks) {
        if (b.kind == RealBlockSpec::Kind::real_eigen) {
            if (std::find(table.real_ids.begin(), table.real_ids.end(), b.eigen_id) !=
                table.real_ids.end())
                continue;
            table.real_ids.push_back(b.eigen_id);
            const bool dominant =
                b.lambda.imag() == 0.0 && b.lambda.real() > 0.0 &&
                std::abs(b.lambda.real() - rho) <= 1e-9 * std::max(1.0, rho);
            table.real_choices.push_back(
                real_branch_choices(b.lambda.real(), p, pin_dominant && dominant));
        } else {
            if (std::find(table.pair_ids.begin(), table.pair_ids.end(), b.eigen_id) !=
                table.pair_ids.end())
                continue;
            table.pair_ids.push_back(b.eigen_id);
            table.pair_choices.push_back(b.lambda.imag() == 0.0 ? negative_axis_pair_choices(p)
                                                                : conjugate_pair_choices(p));
        }
    }
    return table;
}

}  // namespace

RootCatalog enumerate_ev_positive_primary(const RealJordanDecomposition& d, int p,
                                          const Tolerance& tol) {
    if (p < 2) throw error("p must exceed 1");
    if (d.singular()) throw numerical_error("enumeration requires a nonsingular matrix");
    if (d.blocks.empty() || d.blocks.front().kind != RealBlockSpec::Kind::real_eigen ||
        d.blocks.front().lambda.real() <= 0.0)
        throw numerical_error("leading block is not a positive real eigenvalue; matrix is not "
                              "primitive or eventually positive");

    RootCatalog catalog;
    catalog.derogatory = d.derogatory();
    catalog.nonprimary_available = catalog.derogatory;
    catalog.primary_total =
        saturating_pow(static_cast<unsigned long long>(p), static_cast<unsigned>(d.summary.s));
    catalog.real_primary_count = count_real_primary(d.summary, p);
    catalog.ev_positive_primary_count = count_ev_positive_primary(d.summary, p);

    const DistinctChoiceTable table = build_table(d, p, true);
    const std::vector<BranchAssignment> assignments = enumerate_primary_assignments(d, table, p);
    for (const BranchAssignment& a : assignments) {
        RootReport rep = assemble_primary_root(d, a, tol);
        if (!rep.is_real || !rep.is_eventually_positive)
            throw numerical_error(
                "internal consistency: selected assignment failed eventual-positivity "
                "re-verification");
        catalog.assignments.push_back(a);
        catalog.roots.push_back(std::move(rep));
    }
    if (catalog.assignments.size() != catalog.ev_positive_primary_count)
        throw numerical_error("internal consistency: enumeration count " +
                              std::to_string(catalog.assignments.size()) +
                              " disagrees with the formula " +
                              std::to_string(catalog.ev_positive_primary_count));
    return catalog;
}

RootCatalog enumerate_real_primary(const RealJordanDecomposition& d, int p, const Tolerance& tol) {
    if (p < 2) throw error("p must exceed 1");
    if (d.singular()) throw numerical_error("enumeration requires a nonsingular matrix");

    RootCatalog catalog;
    catalog.derogatory = d.derogatory();
    catalog.nonprimary_available = catalog.derogatory;
    catalog.primary_total =
        saturating_pow(static_cast<unsigned long long>(p), static_cast<unsigned>(d.summary.s));
    catalog.real_primary_count = count_real_primary(d.summary, p);
    try {
        catalog.ev_positive_primary_count = count_ev_positive_primary(d.summary, p);
    } catch (const numerical_error&) {
        catalog.ev_positive_primary_count = 0;  // no positive real eigenvalue
    }

    const DistinctChoiceTable table = build_table(d, p, false);
    const std::vector<BranchAssignment> assignments = enumerate_primary_assignments(d, table, p);
    for (const BranchAssignment& a : assignments) {
        RootReport rep = assemble_primary_root(d, a, tol);
        if (!rep.is_real)
            throw numerical_error("internal consistency: selected assignment is not real");
        catalog.assignments.push_back(a);
        catalog.roots.push_back(std::move(rep));
    }
    if (catalog.assignments.size() != catalog.real_primary_count)
        throw numerical_error("internal consistency: real enumeration count " +
                              std::to_string(catalog.assignments.size()) +
                              " disagrees with the formula " +
                              std::to_string(catalog.real_primary_count));
    return catalog;
}

std::vector<RootReport> enumerate_nonprimary_family(const RealJordanDecomposition& d, int p,
                                                    const BranchAssignment& assignment,
                                                    const std::vector<std::uint64_t>& seeds,
                                                    const Tolerance& tol) {
    if (p < 2) throw error("p must exceed 1");
    if (!d.derogatory()) throw numerical_error("nonprimary families require a derogatory matrix");

    // Validate the assignment against the selection rules.
    const double rho = [&] {
        double m = 0.0;
        for (const DistinctEigenvalue& ev : d.summary.distinct) m = std::max(m, std::abs(ev.value));
        return m;
    }();
    std::size_t ri = 0, pi = 0;
    for (const RealBlockSpec& b : d.blocks) {
        if (b.kind == RealBlockSpec::Kind::real_eigen) {
            const int j = assignment.real_indices.at(ri++);
            const bool dominant = b.lambda.imag() == 0.0 && b.lambda.real() > 0.0 &&
                                  std::abs(b.lambda.real() - rho) <= 1e-9 * std::max(1.0, rho);
            if (dominant && j != 0)
                throw error("dominant eigenvalue must take the principal branch");
            if (b.lambda.real() < 0.0 && p % 2 == 0)
                throw error("negative real blocks must be paired before nonprimary assembly");
            const std::vector<int> allowed = real_branch_choices(b.lambda.real(), p, false);
            if (std::find(allowed.begin(), allowed.end(), j) == allowed.end())
                throw error("branch choice is not real on a real block");
        } else {
            const auto pr = assignment.pair_indices.at(pi++);
            const std::vector<std::pair<int, int>> allowed =
                b.lambda.imag() == 0.0 ? negative_axis_pair_choices(p) : conjugate_pair_choices(p);
            if (std::find(allowed.begin(), allowed.end(), pr) == allowed.end())
                throw error("pair branch choice does not produce a real block");
        }
    }

    std::vector<RootReport> out;
    out.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
        const CommutantParameter u = sample_commutant(d, seed, tol);
        out.push_back(assemble_nonprimary_root(d, assignment, u, tol));
    }
    return out;
}

std::vector<RootReport> enumerate_real_paired_roots(const RealJordanDecomposition& d, int p,
                                                    const Tolerance& tol) {
    if (p < 2) throw error("p must exceed 1");
    if (p % 2 == 1 || d.summary.r2 == 0) return {};
    const RealJordanDecomposition paired = negative_pairing(d, p);

    // Per-block choices this time: the paired roots are nonprimary, so
    // blocks sharing an eigenvalue may take different branches.
    std::vector<std::vector<int>> real_choices;
    std::vector<std::vector<std::pair<int, int>>> pair_choices;
    std::size_t combos = 1;
    for (const RealBlockSpec& b : paired.blocks) {
        if (b.kind == RealBlockSpec::Kind::real_eigen) {
            real_choices.push_back(real_branch_choices(b.lambda.real(), p, false));
            if (real_choices.back().empty()) return {};
            combos *= real_choices.back().size();
        } else {
            pair_choices.push_back(b.lambda.imag() == 0.0 ? negative_axis_pair_choices(p)
                                                          : conjugate_pair_choices(p));
            combos *= pair_choices.back().size();
        }
    }
    if (combos > 4096)
        throw numerical_error("paired-root enumeration too large (" + std::to_string(combos) +
                              " combinations)");

    CommutantParameter ident;
    ident.u = RealMatrix::identity(paired.n());
    ident.basis_dimension = 0;

    std::vector<RootReport> out;
    const std::size_t dims = real_choices.size() + pair_choices.size();
    std::vector<std::size_t> odometer(dims, 0);
    for (std::size_t step = 0; step < combos; ++step) {
        BranchAssignment a;
        a.p = p;
        a.primary = false;
        std::size_t rpos = 0, ppos = 0;
        for (const RealBlockSpec& b : paired.blocks) {
            if (b.kind == RealBlockSpec::Kind::real_eigen) {
                a.real_indices.push_back(real_choices[rpos][odometer[rpos]]);
                ++rpos;
            } else {
                a.pair_indices.push_back(pair_choices[ppos][odometer[real_choices.size() + ppos]]);
                ++ppos;
            }
        }
        RootReport rep = assemble_nonprimary_root(paired, a, ident, tol);
        if (!rep.is_real)
            throw numerical_error("internal consistency: paired root is not real");
        out.push_back(std::move(rep));
        for (std::size_t dim = dims; dim-- > 0;) {
            const std::size_t limit = dim < real_choices.size()
                                          ? real_choices[dim].size()
                                          : pair_choices[dim - real_choices.size()].size();
            if (++odometer[dim] < limit) break;
            odometer[dim] = 0;
        }
    }
    return out;
}

}  // namespace pfr
