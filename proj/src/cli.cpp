#include "pfr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "pfr/enumroots.hpp"
#include "pfr/io.hpp"
#include "pfr/perron.hpp"

namespace pfr {

namespace {

// Hierarchical key-value emitter for the structured format.
class Emitter {
  public:
    explicit Emitter(std::ostream& out) : out_(out) {}

    void kv(std::string_view key, std::string_view value) {
        pad();
        out_ << key << ": " << value << '\n';
    }
    void kv(std::string_view key, double value) { kv(key, format_full(value)); }
    void kv(std::string_view key, unsigned long long value) { kv(key, std::to_string(value)); }
    void kv(std::string_view key, int value) { kv(key, std::to_string(value)); }
    void kv(std::string_view key, bool value) { kv(key, value ? "true" : "false"); }
    void open(std::string_view key) {
        pad();
        out_ << key << ":\n";
        indent_ += 1;
    }
    void close() { indent_ -= 1; }
    void item() {
        pad();
        out_ << "-\n";
        indent_ += 1;
    }
    void end_item() { indent_ -= 1; }
    void raw_line(std::string_view text) {
        pad();
        out_ << text << '\n';
    }

  private:
    void pad() {
        for (int i = 0; i < indent_; ++i) out_ << "  ";
    }
    std::ostream& out_;
    int indent_ = 0;
};

std::string format_assignment(const BranchAssignment& a) {
    std::ostringstream ss;
    ss << '(';
    bool first = true;
    for (int j : a.real_indices) {
        if (!first) ss << ',';
        ss << j;
        first = false;
    }
    for (auto [j1, j2] : a.pair_indices) {
        if (!first) ss << ',';
        ss << '(' << j1 << ',' << j2 << ')';
        first = false;
    }
    ss << ')';
    return ss.str();
}

std::string format_complex(cdouble z) {
    std::ostringstream ss;
    ss << format_full(z.real());
    if (z.imag() != 0.0) ss << (z.imag() > 0.0 ? "+" : "-") << format_full(std::abs(z.imag())) << "i";
    return ss.str();
}

Tolerance resolve_tolerance(const AnalysisRequest& req, bool& explicit_tol) {
    explicit_tol = false;
    if (req.tol_value) {
        explicit_tol = true;
        return Tolerance(*req.tol_value, *req.tol_value);
    }
    if (const char* env = std::getenv("PERRON_ROOTS_TOL")) {
        try {
            const double v = std::stod(env);
            explicit_tol = true;
            return Tolerance(v, v);
        } catch (...) {
            throw parse_error("PERRON_ROOTS_TOL is not a number", 0, 0);
        }
    }
    return Tolerance{};
}

void emit_matrix_structured(Emitter& em, const RealMatrix& m) {
    em.open("matrix");
    em.kv("rows", static_cast<int>(m.rows()));
    em.kv("cols", static_cast<int>(m.cols()));
    em.open("data");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::ostringstream row;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) row << ' ';
            row << format_full(m(i, j));
        }
        em.raw_line("- " + row.str());
    }
    em.close();
    em.close();
}

void print_matrix_text(std::ostream& out, const RealMatrix& m, const std::string& indent) {
    // Aligned 4-decimal block, then full-precision rows.
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << indent;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const std::string cell = format_display(m(i, j));
            out << std::string(cell.size() >= 10 ? 1 : 10 - cell.size(), ' ') << cell;
        }
        out << '\n';
    }
    out << indent << "full precision:\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << indent << "  ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_full(m(i, j));
        }
        out << '\n';
    }
}

struct LoadedProblem {
    RealMatrix a;
    RealJordanDecomposition decomp;
};

LoadedProblem load_and_decompose(const AnalysisRequest& req, const Tolerance& tol) {
    LoadedProblem prob;
    prob.a = read_matrix_file(req.matrix_path);
    if (!prob.a.square()) throw dimension_error("input matrix must be square");
    if (!req.factorization_path.empty()) {
        FactorizationFile fac = read_factorization_file(req.factorization_path);
        prob.decomp =
            decomposition_from_factorization(prob.a, fac.r, std::move(fac.blocks), tol);
    } else {
        prob.decomp = real_jordan_decompose(prob.a, tol);
    }
    return prob;
}

void emit_spectrum(Emitter& em, const SpectrumSummary& s) {
    em.open("spectrum");
    em.kv("n", s.n);
    em.kv("s", s.s);
    em.kv("t", s.t);
    em.kv("r1", s.r1);
    em.kv("r2", s.r2);
    em.kv("c", s.c);
    em.kv("singular", s.has_zero());
    em.open("eigenvalues");
    for (const DistinctEigenvalue& ev : s.distinct) {
        em.item();
        em.kv("re", ev.value.real());
        em.kv("im", ev.value.imag());
        em.kv("multiplicity", ev.multiplicity);
        em.kv("index", ev.index);
        em.end_item();
    }
    em.close();
    em.close();
}

void emit_blocks(Emitter& em, const RealJordanDecomposition& d) {
    em.open("jordan_blocks");
    for (const RealBlockSpec& b : d.blocks) {
        em.item();
        em.kv("kind", b.kind == RealBlockSpec::Kind::real_eigen ? "real" : "cpair");
        em.kv("re", b.lambda.real());
        em.kv("im", b.lambda.imag());
        em.kv("k", b.size);
        em.end_item();
    }
    em.kv("reconstruction_residual", d.residual);
    em.close();
}

void emit_root_structured(Emitter& em, const RootReport& rep, bool with_stochastic) {
    em.kv("assignment", format_assignment(rep.assignment));
    em.kv("residual", rep.residual);
    em.kv("real", rep.is_real);
    em.kv("eventually_positive", rep.is_eventually_positive);
    if (rep.positivity_witness) em.kv("power_index", *rep.positivity_witness);
    if (with_stochastic) em.kv("eventually_stochastic", rep.is_eventually_stochastic);
    if (rep.is_real) emit_matrix_structured(em, rep.x_real);
}

void print_root_text(std::ostream& out, const RootReport& rep, bool with_stochastic) {
    out << "  assignment j = " << format_assignment(rep.assignment) << '\n';
    out << "    residual |X^p - A| = " << format_full(rep.residual) << '\n';
    out << "    real: " << (rep.is_real ? "yes" : "no")
        << "; eventually positive: " << (rep.is_eventually_positive ? "yes" : "no");
    if (rep.positivity_witness) out << " (power index " << *rep.positivity_witness << ")";
    if (with_stochastic)
        out << "; eventually stochastic: " << (rep.is_eventually_stochastic ? "yes" : "no");
    out << '\n';
    if (rep.is_real) print_matrix_text(out, rep.x_real, "    ");
}

int cmd_analyze(const AnalysisRequest& req, std::ostream& out) {
    bool explicit_tol = false;
    const Tolerance tol = resolve_tolerance(req, explicit_tol);
    const LoadedProblem prob = load_and_decompose(req, tol);
    const RealMatrix& a = prob.a;

    const bool nonnegative = min_entry(a) >= -tol.abs_eps;
    const bool primitive = nonnegative && is_primitive(a, tol);
    const bool stochastic = is_stochastic(a, tol);
    const bool ev_positive = is_eventually_positive(a, tol);
    const bool ev_stochastic = stochastic && ev_positive;
    PerronReport perron;
    bool have_perron = true;
    try {
        perron = spectral_radius_data(a, tol);
    } catch (const numerical_error&) {
        have_perron = false;  // zero matrix
    }

    if (req.format == AnalysisRequest::Format::structured) {
        Emitter em(out);
        em.kv("schema", 1);
        em.kv("command", "analyze");
        emit_spectrum(em, prob.decomp.summary);
        emit_blocks(em, prob.decomp);
        em.open("perron");
        if (have_perron) {
            em.kv("rho", perron.rho);
            em.kv("rho_is_eigenvalue", perron.rho_is_eigenvalue);
            em.kv("rho_simple", perron.rho_simple);
            em.kv("rho_dominant", perron.rho_dominant);
            em.kv("right_positive", perron.right_positive);
            em.kv("left_positive", perron.left_positive);
        } else {
            em.kv("rho", 0.0);
        }
        em.close();
        em.open("verdicts");
        em.kv("nonnegative", nonnegative);
        em.kv("primitive", primitive);
        em.kv("stochastic", stochastic);
        em.kv("eventually_positive", ev_positive);
        em.kv("eventually_stochastic", ev_stochastic);
        em.kv("derogatory", prob.decomp.derogatory());
        em.close();
        return 0;
    }

    out << "analysis of " << req.matrix_path << " (" << a.rows() << "x" << a.cols() << ")\n";
    out << "spectrum: s=" << prob.decomp.summary.s << " r1=" << prob.decomp.summary.r1
        << " r2=" << prob.decomp.summary.r2 << " c=" << prob.decomp.summary.c
        << " t=" << prob.decomp.summary.t << '\n';
    for (const DistinctEigenvalue& ev : prob.decomp.summary.distinct)
        out << "  lambda = " << format_complex(ev.value) << "  multiplicity " << ev.multiplicity
            << "  largest block " << ev.index << '\n';
    if (have_perron) {
        out << "rho = " << format_full(perron.rho) << (perron.rho_simple ? " (simple" : " (not simple")
            << (perron.rho_dominant ? ", dominant)" : ", not dominant)") << '\n';
    }
    out << "nonnegative: " << (nonnegative ? "yes" : "no")
        << "; primitive: " << (primitive ? "yes" : "no")
        << "; stochastic: " << (stochastic ? "yes" : "no") << '\n';
    out << "eventually positive: " << (ev_positive ? "yes" : "no")
        << "; eventually stochastic: " << (ev_stochastic ? "yes" : "no") << '\n';
    out << "jordan blocks:";
    for (const RealBlockSpec& b : prob.decomp.blocks)
        out << ' ' << (b.kind == RealBlockSpec::Kind::real_eigen ? "J_" : "C_") << b.size << "("
            << format_complex(b.lambda) << ")";
    out << "\nreconstruction residual: " << format_full(prob.decomp.residual) << '\n';
    return 0;
}

// Rule-conforming nonprimary assignments (capped); used by --nonprimary.
std::vector<BranchAssignment> nonprimary_assignments(const RealJordanDecomposition& d, int p) {
    double rho = 0.0;
    for (const DistinctEigenvalue& ev : d.summary.distinct) rho = std::max(rho, std::abs(ev.value));
    std::vector<std::vector<int>> real_choices;
    std::vector<std::vector<std::pair<int, int>>> pair_choices;
    std::size_t combos = 1;
    for (const RealBlockSpec& b : d.blocks) {
        if (b.kind == RealBlockSpec::Kind::real_eigen) {
            const bool dominant = b.lambda.real() > 0.0 &&
                                  std::abs(b.lambda.real() - rho) <= 1e-9 * std::max(1.0, rho);
            if (b.lambda.real() < 0.0 && p % 2 == 0) return {};  // needs pairing first
            real_choices.push_back(real_branch_choices(b.lambda.real(), p, dominant));
            combos *= real_choices.back().size();
        } else {
            pair_choices.push_back(b.lambda.imag() == 0.0 ? negative_axis_pair_choices(p)
                                                          : conjugate_pair_choices(p));
            combos *= pair_choices.back().size();
        }
        if (combos > 512) return {};  // too many to sweep; user can drive the library
    }
    std::vector<BranchAssignment> out;
    const std::size_t dims = real_choices.size() + pair_choices.size();
    std::vector<std::size_t> odometer(dims, 0);
    for (std::size_t step = 0; step < combos; ++step) {
        BranchAssignment a;
        a.p = p;
        a.primary = false;
        std::size_t rpos = 0, ppos = 0;
        for (const RealBlockSpec& b : d.blocks) {
            if (b.kind == RealBlockSpec::Kind::real_eigen)
                a.real_indices.push_back(real_choices[rpos][odometer[rpos]]), ++rpos;
            else
                a.pair_indices.push_back(pair_choices[ppos][odometer[real_choices.size() + ppos]]),
                    ++ppos;
        }
        if (assignment_is_nonprimary(d, a) && out.size() < 64) out.push_back(std::move(a));
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

int cmd_roots(const AnalysisRequest& req, std::ostream& out, std::ostream& err) {
    if (req.p < 2) throw parse_error("roots requires --p greater than 1", 0, 0);
    bool explicit_tol = false;
    const Tolerance tol = resolve_tolerance(req, explicit_tol);
    const LoadedProblem prob = load_and_decompose(req, tol);
    const RealMatrix& a = prob.a;
    const RealJordanDecomposition& d = prob.decomp;
    const bool structured = req.format == AnalysisRequest::Format::structured;

    Emitter em(out);
    if (structured) {
        em.kv("schema", 1);
        em.kv("command", "roots");
        em.kv("p", req.p);
        emit_spectrum(em, d.summary);
        emit_blocks(em, d);
    }

    // Singular inputs go through the existence test; construction only when
    // the singular part is the zero matrix.
    if (d.singular()) {
        const SingularRootOutcome sing = singular_root_report(d, req.p, tol);
        if (!sing.root_exists) {
            if (structured) {
                em.open("singular");
                em.kv("root_exists", false);
                em.close();
            }
            err << "error: singular matrix has no " << req.p << "-th root (ascent condition)\n";
            return 3;
        }
        if (structured) {
            em.open("singular");
            em.kv("root_exists", true);
            em.kv("constructed", sing.constructed);
            if (sing.constructed) {
                em.open("root");
                emit_root_structured(em, *sing.root, req.stochastic);
                em.close();
            }
            em.close();
        } else {
            out << "singular matrix: a " << req.p << "-th root exists\n";
            if (sing.constructed) {
                out << "constructed root (zero on the singular part):\n";
                print_root_text(out, *sing.root, req.stochastic);
            } else {
                out << "construction not supported: singular part is not the zero matrix\n";
            }
        }
        return 0;
    }

    const bool ev_positive = is_eventually_positive(a, tol);
    RootCatalog catalog;
    if (ev_positive) {
        catalog = enumerate_ev_positive_primary(d, req.p, tol);
    } else {
        err << "warning: matrix is not eventually positive; enumerating real primary roots\n";
        catalog = enumerate_real_primary(d, req.p, tol);
    }

    std::vector<RootReport> paired;
    if (req.p % 2 == 0 && d.summary.r2 > 0 && real_pth_root_exists(a, req.p, tol))
        paired = enumerate_real_paired_roots(d, req.p, tol);

    std::vector<std::pair<BranchAssignment, std::vector<RootReport>>> families;
    if (req.nonprimary && d.derogatory()) {
        const std::vector<std::uint64_t> seeds{req.seed, req.seed + 1, req.seed + 2};
        for (const BranchAssignment& a_np : nonprimary_assignments(d, req.p))
            families.emplace_back(a_np, enumerate_nonprimary_family(d, req.p, a_np, seeds, tol));
    }

    if (structured) {
        em.open("counts");
        em.kv("primary_total", catalog.primary_total);
        em.kv("real_primary", catalog.real_primary_count);
        em.kv("ev_positive_primary", catalog.ev_positive_primary_count);
        em.kv("derogatory", catalog.derogatory);
        em.kv("nonprimary_available", catalog.nonprimary_available);
        em.close();
        em.open(ev_positive ? "ev_positive_primary_roots" : "real_primary_roots");
        for (const RootReport& rep : catalog.roots) {
            em.item();
            emit_root_structured(em, rep, req.stochastic);
            em.end_item();
        }
        em.close();
        if (!paired.empty()) {
            em.open("paired_real_roots");
            for (const RootReport& rep : paired) {
                em.item();
                emit_root_structured(em, rep, req.stochastic);
                em.end_item();
            }
            em.close();
        }
        if (!families.empty()) {
            em.open("nonprimary_families");
            for (const auto& [asg, reports] : families) {
                em.item();
                em.kv("assignment", format_assignment(asg));
                em.open("samples");
                for (const RootReport& rep : reports) {
                    em.item();
                    emit_root_structured(em, rep, req.stochastic);
                    em.end_item();
                }
                em.close();
                em.end_item();
            }
            em.close();
        }
        return 0;
    }

    out << "p = " << req.p << ": " << catalog.primary_total << " primary roots, "
        << catalog.real_primary_count << " real primary, " << catalog.ev_positive_primary_count
        << " eventually positive primary\n";
    out << (ev_positive ? "eventually positive primary roots:" : "real primary roots:") << '\n';
    for (const RootReport& rep : catalog.roots) print_root_text(out, rep, req.stochastic);
    if (!paired.empty()) {
        out << "real roots via paired negative blocks (nonprimary):\n";
        for (const RootReport& rep : paired) print_root_text(out, rep, req.stochastic);
    }
    if (catalog.derogatory && !req.nonprimary)
        out << "matrix is derogatory: nonprimary families exist (rerun with --nonprimary)\n";
    for (const auto& [asg, reports] : families) {
        out << "nonprimary family j = " << format_assignment(asg) << ":\n";
        for (const RootReport& rep : reports) print_root_text(out, rep, req.stochastic);
    }
    return 0;
}

int cmd_verify(const AnalysisRequest& req, std::ostream& out) {
    if (req.p < 2) throw parse_error("verify requires --p greater than 1", 0, 0);
    bool explicit_tol = false;
    const Tolerance tol = resolve_tolerance(req, explicit_tol);
    const RealMatrix x = read_matrix_file(req.matrix_path);
    const RealMatrix a = read_matrix_file(req.second_path);
    if (!x.square() || !a.square() || x.rows() != a.rows())
        throw dimension_error("verify requires square matrices of equal order");

    const double residual =
        max_abs_norm(matrix_power(x, static_cast<unsigned long long>(req.p)) - a);
    // Default threshold admits inputs printed to 4 decimals; --tol or
    // PERRON_ROOTS_TOL overrides it.
    const double threshold =
        (explicit_tol ? tol.abs_eps : 5e-3) * std::max(1.0, max_abs_norm(a));
    const bool pass = residual <= threshold;
    const bool ev_positive = is_eventually_positive(x, tol);
    const bool ev_stochastic = is_eventually_stochastic(x, tol, req.cap);

    if (req.format == AnalysisRequest::Format::structured) {
        Emitter em(out);
        em.kv("schema", 1);
        em.kv("command", "verify");
        em.kv("p", req.p);
        em.kv("residual", residual);
        em.kv("threshold", threshold);
        em.kv("pass", pass);
        em.kv("eventually_positive", ev_positive);
        em.kv("eventually_stochastic", ev_stochastic);
    } else {
        out << "|X^" << req.p << " - A| = " << format_full(residual) << " (threshold "
            << format_full(threshold) << ")\n";
        out << "verdict: " << (pass ? "pass" : "fail") << '\n';
        out << "X eventually positive: " << (ev_positive ? "yes" : "no")
            << "; eventually stochastic: " << (ev_stochastic ? "yes" : "no") << '\n';
    }
    return pass ? 0 : 4;
}

int cmd_power_index(const AnalysisRequest& req, std::ostream& out) {
    bool explicit_tol = false;
    const Tolerance tol = resolve_tolerance(req, explicit_tol);
    const RealMatrix a = read_matrix_file(req.matrix_path);
    if (!a.square()) throw dimension_error("input matrix must be square");
    const int cap = req.cap > 0 ? req.cap : default_power_cap(a.rows());
    const PowerIndexResult res = power_index(a, cap, tol);

    if (req.format == AnalysisRequest::Format::structured) {
        Emitter em(out);
        em.kv("schema", 1);
        em.kv("command", "power-index");
        em.kv("cap", res.cap_used);
        if (res.verdict == PowerIndexResult::Verdict::found) {
            em.kv("verdict", "found");
            em.kv("power_index", res.witness_exponent);
        } else {
            em.kv("verdict", "exceeded-cap");
        }
    } else {
        if (res.verdict == PowerIndexResult::Verdict::found)
            out << "power index: " << res.witness_exponent << " (cap " << res.cap_used << ")\n";
        else
            out << "power index: not found within cap " << res.cap_used << '\n';
    }
    return 0;
}

}  // namespace

int run(const AnalysisRequest& req, std::ostream& out, std::ostream& err) {
    try {
        switch (req.command) {
            case AnalysisRequest::Command::analyze:
                return cmd_analyze(req, out);
            case AnalysisRequest::Command::roots:
                return cmd_roots(req, out, err);
            case AnalysisRequest::Command::verify:
                return cmd_verify(req, out);
            case AnalysisRequest::Command::power_index:
                return cmd_power_index(req, out);
        }
        return 3;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const dimension_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const numerical_error& e) {
        err << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace pfr
