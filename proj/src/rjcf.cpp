#include "pfr/rjcf.hpp"

#include <algorithm>
#include <cmath>

#include "pfr/svd.hpp"

namespace pfr {

RealMatrix RealJordanDecomposition::jordan_matrix() const {
    RealMatrix j(n(), n());
    std::size_t offset = 0;
    for (const RealBlockSpec& b : blocks) {
        if (b.kind == RealBlockSpec::Kind::real_eigen) {
            for (int i = 0; i < b.size; ++i) {
                j(offset + i, offset + i) = b.lambda.real();
                if (i + 1 < b.size) j(offset + i, offset + i + 1) = 1.0;
            }
        } else {
            j.place(offset, offset, complex_pair_block(b.lambda, b.size));
        }
        offset += b.rows();
    }
    return j;
}

bool RealJordanDecomposition::derogatory() const {
    // An eigenvalue appearing in more than one complex Jordan block; a pair
    // block with real lambda is itself a twin pair of blocks.
    std::vector<int> ids;
    for (const RealBlockSpec& b : blocks) {
        if (b.kind == RealBlockSpec::Kind::complex_pair && b.lambda.imag() == 0.0) return true;
        ids.push_back(b.eigen_id);
    }
    std::sort(ids.begin(), ids.end());
    return std::adjacent_find(ids.begin(), ids.end()) != ids.end();
}

bool RealJordanDecomposition::singular() const {
    for (const RealBlockSpec& b : blocks)
        if (b.lambda == cdouble{0.0, 0.0}) return true;
    return false;
}

ComplexMatrix jordan_block(cdouble lambda, int k) {
    if (k < 1) throw dimension_error("block size must be positive");
    ComplexMatrix j(k, k);
    for (int i = 0; i < k; ++i) {
        j(i, i) = lambda;
        if (i + 1 < k) j(i, i + 1) = 1.0;
    }
    return j;
}

RealMatrix complex_pair_block(cdouble lambda, int k) {
    if (k < 1) throw dimension_error("block size must be positive");
    RealMatrix m(2 * k, 2 * k);
    for (int b = 0; b < k; ++b) {
        const std::size_t o = 2 * static_cast<std::size_t>(b);
        m(o, o) = lambda.real();
        m(o, o + 1) = lambda.imag();
        m(o + 1, o) = -lambda.imag();
        m(o + 1, o + 1) = lambda.real();
        if (b + 1 < k) {
            m(o, o + 2) = 1.0;
            m(o + 1, o + 3) = 1.0;
        }
    }
    return m;
}

ComplexMatrix pairing_similarity(int k) {
    if (k < 1) throw dimension_error("block size must be positive");
    ComplexMatrix s(2 * k, 2 * k);
    const cdouble mi{0.0, -1.0};
    for (int b = 0; b < k; ++b) {
        const std::size_t o = 2 * static_cast<std::size_t>(b);
        s(o, o) = mi;
        s(o, o + 1) = mi;
        s(o + 1, o) = 1.0;
        s(o + 1, o + 1) = -1.0;
    }
    return s;
}

ComplexMatrix pairing_similarity_inverse(int k) {
    if (k < 1) throw dimension_error("block size must be positive");
    ComplexMatrix s(2 * k, 2 * k);
    const cdouble hi{0.0, 0.5};
    for (int b = 0; b < k; ++b) {
        const std::size_t o = 2 * static_cast<std::size_t>(b);
        s(o, o) = hi;
        s(o, o + 1) = 0.5;
        s(o + 1, o) = hi;
        s(o + 1, o + 1) = -0.5;
    }
    return s;
}

RealMatrix interleave_permutation(int k) {
    if (k < 1) throw dimension_error("block size must be positive");
    RealMatrix p(2 * k, 2 * k);
    // Columns e_1, e_3, ..., e_{2k-1} then e_2, e_4, ..., e_{2k}.
    for (int j = 0; j < k; ++j) p(2 * j, j) = 1.0;
    for (int j = 0; j < k; ++j) p(2 * j + 1, k + j) = 1.0;
    return p;
}

namespace {

// Jordan chains of the eigenvalue with m = a - lambda I.  Chains are built
// from their tops: a top at level k lies in null(m^k), independent of
// null(m^{k-1}) and of the level-k vectors carried down from longer chains;
// the rest of the chain follows by multiplication.  Works in real or
// complex arithmetic.
template <class T>
std::vector<Mat<T>> jordan_chains(const Mat<T>& m, const std::vector<int>& sizes_desc,
                                  double rank_eps) {
    const std::size_t n = m.rows();
    const int mmax = sizes_desc.front();

    // Null bases of scaled powers; scaling keeps the rank decisions clean.
    std::vector<Mat<T>> null_bases(mmax + 1);  // [k] for m^k; [0] stays empty
    Mat<T> power = Mat<T>::identity(n);
    Mat<T> mscaled = m;
    const double mscale = std::max(1.0, max_abs_norm(m));
    for (std::size_t i = 0; i < mscaled.size(); ++i) mscaled.data()[i] /= mscale;
    for (int k = 1; k <= mmax; ++k) {
        power = power * mscaled;
        const double pscale = max_abs_norm(power);
        if (pscale > 0.0)
            for (std::size_t i = 0; i < power.size(); ++i) power.data()[i] /= pscale;
        null_bases[k] = null_space_basis(power, rank_eps);
    }

    struct Chain {
        Mat<T> cols;  // n x length, v_1 ... v_length
        int length;
    };
    std::vector<Chain> chains;

    for (int k = mmax; k >= 1; --k) {
        const int exact = static_cast<int>(std::count(sizes_desc.begin(), sizes_desc.end(), k));
        if (exact == 0) continue;

        // Obstruction space: null(m^{k-1}) plus the level-k vectors of the
        // chains already selected at higher levels.
        std::size_t obs_cols = null_bases[k - 1].empty() ? 0 : null_bases[k - 1].cols();
        for (const Chain& ch : chains)
            if (ch.length >= k + 1) ++obs_cols;
        Mat<T> obstruction;
        if (obs_cols > 0) {
            obstruction = Mat<T>(n, obs_cols);
            std::size_t col = 0;
            if (!null_bases[k - 1].empty())
                for (std::size_t j = 0; j < null_bases[k - 1].cols(); ++j, ++col)
                    for (std::size_t i = 0; i < n; ++i) obstruction(i, col) = null_bases[k - 1](i, j);
            for (const Chain& ch : chains)
                if (ch.length >= k + 1) {
                    for (std::size_t i = 0; i < n; ++i) obstruction(i, col) = ch.cols(i, k - 1);
                    ++col;
                }
            obstruction = orthonormal_columns(obstruction);
        }

        const Mat<T>& candidates = null_bases[k];
        if (candidates.empty()) throw numerical_error("chain extraction: missing null space");
        Mat<T> projected(n, candidates.cols());
        for (std::size_t j = 0; j < candidates.cols(); ++j) {
            std::vector<T> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = candidates(i, j);
            if (!obstruction.empty()) v = project_out(obstruction, v);
            for (std::size_t i = 0; i < n; ++i) projected(i, j) = v[i];
        }
        const Mat<T> tops = orthonormal_columns(projected, 1e-8);
        if (tops.empty() || static_cast<int>(tops.cols()) < exact)
            throw numerical_error("chain extraction failed: too few independent chain tops");

        for (int c = 0; c < exact; ++c) {
            Chain ch;
            ch.length = k;
            ch.cols = Mat<T>(n, k);
            std::vector<T> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = tops(i, c);
            for (int level = k; level >= 1; --level) {
                for (std::size_t i = 0; i < n; ++i) ch.cols(i, level - 1) = v[i];
                if (level > 1) {
                    std::vector<T> next(n, T{});
                    for (std::size_t i = 0; i < n; ++i) {
                        T acc{};
                        for (std::size_t l = 0; l < n; ++l) acc += m(i, l) * v[l];
                        next[i] = acc;
                    }
                    v = std::move(next);
                }
            }
            // Scale the whole chain so the eigenvector has unit norm; a
            // chain scales as one object.
            double v1norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) v1norm += std::norm(ch.cols(i, 0));
            v1norm = std::sqrt(v1norm);
            if (v1norm <= 1e-14)
                throw numerical_error("chain extraction failed: degenerate chain bottom");
            for (std::size_t i = 0; i < n; ++i)
                for (int j = 0; j < k; ++j) ch.cols(i, j) = ch.cols(i, j) / v1norm;
            chains.push_back(std::move(ch));
        }
    }

    std::stable_sort(chains.begin(), chains.end(),
                     [](const Chain& a, const Chain& b) { return a.length > b.length; });
    std::vector<Mat<T>> out;
    out.reserve(chains.size());
    for (Chain& ch : chains) out.push_back(std::move(ch.cols));
    return out;
}

// Phase-rotate a chain so the largest entry of its eigenvector is real
// positive; keeps output deterministic.
void normalize_chain_phase(ComplexMatrix& chain) {
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < chain.rows(); ++i) {
        const double mag = std::abs(chain(i, 0));
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag == 0.0) return;
    const cdouble rot = std::conj(chain(best, 0)) / best_mag;
    for (std::size_t i = 0; i < chain.size(); ++i) chain.data()[i] *= rot;
}

void normalize_chain_sign(RealMatrix& chain) {
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < chain.rows(); ++i) {
        const double mag = std::abs(chain(i, 0));
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag > 0.0 && chain(best, 0) < 0.0)
        for (std::size_t i = 0; i < chain.size(); ++i) chain.data()[i] = -chain.data()[i];
}

double validate_reconstruction(RealJordanDecomposition& d, double bound) {
    const RealMatrix j = d.jordan_matrix();
    d.residual = max_abs_norm(d.a - d.r * j * d.r_inv);
    if (d.residual > bound)
        throw numerical_error("real Jordan reconstruction residual " + std::to_string(d.residual) +
                              " exceeds bound " + std::to_string(bound));
    return d.residual;
}

}  // namespace

RealJordanDecomposition real_jordan_decompose(const RealMatrix& a, const Tolerance& tol,
                                              const SpectralOptions& opts) {
    if (!a.square()) throw dimension_error("decomposition requires a square matrix");
    const std::size_t n = a.rows();
    const SpectralAnalysis analysis = analyze_spectrum(a, tol, opts);
    const SpectrumSummary& summary = analysis.summary;

    RealJordanDecomposition d;
    d.a = a;
    d.summary = summary;

    RealMatrix r(n, n);
    std::size_t col = 0;

    // Real eigenvalues first (summary order is already descending), then
    // conjugate pairs through their Im > 0 member.
    for (std::size_t id = 0; id < summary.distinct.size(); ++id) {
        const DistinctEigenvalue& ev = summary.distinct[id];
        if (ev.value.imag() != 0.0) continue;
        RealMatrix m = a;
        for (std::size_t i = 0; i < n; ++i) m(i, i) -= ev.value.real();
        const std::vector<int>& sizes = analysis.structure.blocks[id];
        std::vector<RealMatrix> chains = jordan_chains(m, sizes, opts.rank_eps);
        for (std::size_t ci = 0; ci < chains.size(); ++ci) {
            normalize_chain_sign(chains[ci]);
            const int k = static_cast<int>(chains[ci].cols());
            for (int j = 0; j < k; ++j)
                for (std::size_t i = 0; i < n; ++i) r(i, col + j) = chains[ci](i, j);
            d.blocks.push_back({RealBlockSpec::Kind::real_eigen, ev.value, k, static_cast<int>(id)});
            col += k;
        }
    }
    for (std::size_t id = 0; id < summary.distinct.size(); ++id) {
        const DistinctEigenvalue& ev = summary.distinct[id];
        if (ev.value.imag() <= 0.0) continue;
        ComplexMatrix m = complexify(a);
        for (std::size_t i = 0; i < n; ++i) m(i, i) -= ev.value;
        const std::vector<int>& sizes = analysis.structure.blocks[id];
        std::vector<ComplexMatrix> chains = jordan_chains(m, sizes, opts.rank_eps);
        for (std::size_t ci = 0; ci < chains.size(); ++ci) {
            normalize_chain_phase(chains[ci]);
            const int k = static_cast<int>(chains[ci].cols());
            for (int j = 0; j < k; ++j)
                for (std::size_t i = 0; i < n; ++i) {
                    r(i, col + 2 * j) = chains[ci](i, j).real();
                    r(i, col + 2 * j + 1) = chains[ci](i, j).imag();
                }
            d.blocks.push_back(
                {RealBlockSpec::Kind::complex_pair, ev.value, k, static_cast<int>(id)});
            col += 2 * static_cast<std::size_t>(k);
        }
    }
    if (col != n) throw numerical_error("jordan chains do not fill the space");

    // For a matrix with a dominant simple positive eigenvalue and a positive
    // eigenvector, pin the leading column to the unit-1-norm Perron vector.
    if (!d.blocks.empty() && d.blocks.front().kind == RealBlockSpec::Kind::real_eigen &&
        d.blocks.front().size == 1 && d.blocks.front().lambda.imag() == 0.0 &&
        d.blocks.front().lambda.real() > 0.0 &&
        summary.distinct[d.blocks.front().eigen_id].multiplicity == 1) {
        const double rho = d.blocks.front().lambda.real();
        bool dominant = true;
        for (const DistinctEigenvalue& ev : summary.distinct)
            if (std::abs(ev.value - cdouble(rho, 0.0)) > 1e-12 * std::max(1.0, rho) &&
                std::abs(ev.value) > rho * (1.0 - 1e-8))
                dominant = false;
        bool positive = true;
        for (std::size_t i = 0; i < n; ++i)
            if (r(i, 0) <= tol.abs_eps) positive = false;
        if (dominant && positive) {
            double one_norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) one_norm += std::abs(r(i, 0));
            for (std::size_t i = 0; i < n; ++i) r(i, 0) /= one_norm;
        }
    }

    d.r = std::move(r);
    d.r_inv = inverse(d.r, tol);
    validate_reconstruction(d, 1e-6 * std::max(max_abs_norm(a), tol.abs_eps));
    return d;
}

RealJordanDecomposition decomposition_from_factorization(const RealMatrix& a, const RealMatrix& r,
                                                         std::vector<RealBlockSpec> blocks,
                                                         const Tolerance& tol) {
    if (!a.square() || !r.square() || a.rows() != r.rows())
        throw dimension_error("matrix and factorization dimensions differ");
    std::size_t total = 0;
    bool seen_pair = false;
    for (const RealBlockSpec& b : blocks) {
        if (b.size < 1) throw dimension_error("block size must be positive");
        if (b.kind == RealBlockSpec::Kind::complex_pair) {
            if (b.lambda.imag() < 0.0)
                throw numerical_error("pair blocks must carry Im(lambda) >= 0");
            seen_pair = true;
        } else {
            if (b.lambda.imag() != 0.0) throw numerical_error("real blocks must carry a real eigenvalue");
            if (seen_pair) throw numerical_error("real blocks must precede pair blocks");
        }
        total += b.rows();
    }
    if (total != a.rows()) throw dimension_error("block sizes do not sum to the matrix order");

    RealJordanDecomposition d;
    d.a = a;
    d.r = r;
    d.r_inv = inverse(r, tol);
    d.from_factorization = true;

    // Synthesize the spectrum summary from the declared blocks.
    struct Acc {
        cdouble value;
        int mult = 0;
        int index = 0;
    };
    std::vector<Acc> acc;
    auto add = [&](cdouble lambda, int k) {
        for (Acc& e : acc)
            if (e.value == lambda) {
                e.mult += k;
                e.index = std::max(e.index, k);
                return;
            }
        acc.push_back({lambda, k, k});
    };
    for (const RealBlockSpec& b : blocks) {
        if (b.kind == RealBlockSpec::Kind::real_eigen) {
            add(b.lambda, b.size);
        } else if (b.lambda.imag() == 0.0) {
            add(b.lambda, b.size);
            add(b.lambda, b.size);  // twin real blocks folded into one C-block
        } else {
            add(b.lambda, b.size);
            add(std::conj(b.lambda), b.size);
        }
    }
    std::stable_sort(acc.begin(), acc.end(), [](const Acc& x, const Acc& y) {
        const bool xr = x.value.imag() == 0.0, yr = y.value.imag() == 0.0;
        if (xr != yr) return xr;
        if (xr) return x.value.real() > y.value.real();
        if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
        return x.value.imag() > y.value.imag();
    });
    SpectrumSummary& s = d.summary;
    s.n = static_cast<int>(a.rows());
    for (const Acc& e : acc) {
        s.distinct.push_back({e.value, e.mult, e.index});
        if (e.value.imag() == 0.0) {
            if (e.value.real() > 0.0)
                ++s.r1;
            else if (e.value.real() < 0.0)
                ++s.r2;
            else
                ++s.zeros;
        } else if (e.value.imag() > 0.0) {
            ++s.c;
        }
    }
    s.s = static_cast<int>(s.distinct.size());
    for (RealBlockSpec& b : blocks) {
        const cdouble key = (b.kind == RealBlockSpec::Kind::complex_pair && b.lambda.imag() == 0.0)
                                ? b.lambda
                                : b.lambda;
        b.eigen_id = s.find(key, 1e-12);
        if (b.eigen_id < 0) throw numerical_error("block eigenvalue missing from summary");
        s.t += (b.kind == RealBlockSpec::Kind::complex_pair) ? 2 : 1;
    }
    d.blocks = std::move(blocks);

    validate_reconstruction(d, 1e-12 * std::max(1.0, max_abs_norm(a)));
    return d;
}

RealJordanDecomposition negative_pairing(const RealJordanDecomposition& d, int p) {
    if (p < 2) throw error("p must exceed 1");
    if (p % 2 == 1) return d;

    const std::size_t n = d.n();
    // Group real negative blocks by (eigenvalue, size); each group must
    // have even cardinality.
    std::vector<std::size_t> offsets(d.blocks.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        offsets[i] = off;
        off += d.blocks[i].rows();
    }

    std::vector<std::size_t> keep_order;        // block indices staying as-is
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // twin negative blocks
    std::vector<bool> consumed(d.blocks.size(), false);
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        const RealBlockSpec& b = d.blocks[i];
        if (consumed[i]) continue;
        if (b.kind != RealBlockSpec::Kind::real_eigen || b.lambda.real() >= 0.0 ||
            b.lambda.imag() != 0.0) {
            keep_order.push_back(i);
            continue;
        }
        std::size_t partner = d.blocks.size();
        for (std::size_t j = i + 1; j < d.blocks.size(); ++j) {
            if (consumed[j]) continue;
            const RealBlockSpec& cand = d.blocks[j];
            if (cand.kind == RealBlockSpec::Kind::real_eigen && cand.eigen_id == b.eigen_id &&
                cand.size == b.size) {
                partner = j;
                break;
            }
        }
        if (partner == d.blocks.size())
            throw numerical_error("negative eigenvalue " + std::to_string(b.lambda.real()) +
                                  " has an unpaired Jordan block of size " +
                                  std::to_string(b.size) + "; no real p-th root path for even p");
        consumed[i] = consumed[partner] = true;
        pairs.emplace_back(i, partner);
    }

    if (pairs.empty()) return d;

    RealJordanDecomposition out;
    out.a = d.a;
    out.summary = d.summary;
    out.from_factorization = d.from_factorization;

    // New column order: kept blocks in order (reals then existing pairs are
    // already ordered), then each twin pair interleaved by P_k so the pair
    // occupies a C_k(lambda) block.
    RealMatrix rnew(n, n);
    std::size_t col = 0;
    std::vector<RealBlockSpec> new_real, new_pairs;
    auto copy_block_cols = [&](std::size_t block_idx) {
        const std::size_t o = offsets[block_idx];
        const std::size_t w = d.blocks[block_idx].rows();
        for (std::size_t j = 0; j < w; ++j)
            for (std::size_t i = 0; i < n; ++i) rnew(i, col + j) = d.r(i, o + j);
        col += w;
    };
    for (std::size_t idx : keep_order) {
        if (d.blocks[idx].kind == RealBlockSpec::Kind::real_eigen)
            new_real.push_back(d.blocks[idx]);
        else
            new_pairs.push_back(d.blocks[idx]);
    }
    // Copy kept real blocks first, then kept pair blocks, preserving order.
    for (std::size_t idx : keep_order)
        if (d.blocks[idx].kind == RealBlockSpec::Kind::real_eigen) copy_block_cols(idx);
    for (std::size_t idx : keep_order)
        if (d.blocks[idx].kind == RealBlockSpec::Kind::complex_pair) copy_block_cols(idx);

    for (const auto& [first, second] : pairs) {
        const RealBlockSpec& b = d.blocks[first];
        const int k = b.size;
        // Columns of the twin pair in J_k ⊕ J_k order, post-multiplied by
        // P_k^T: since P_k's columns are e_1, e_3, ..., e_2, e_4, ...,
        // right-multiplying by P_k^T interleaves the two chains.
        // Column j of R_pair * P_k^T = column of R_pair at position where
        // P_k^T has a 1 in row... P_k^T(i, j) = P_k(j, i); column j of the
        // product is R_pair times the j-th column of P_k^T.
        const RealMatrix pk = interleave_permutation(k);
        for (int j = 0; j < 2 * k; ++j) {
            // new column j = sum_i R_pair(:, i) * P_k^T(i, j) = R_pair(:, i0)
            // with P_k(j... find i with pk(j, i) == 1 => new col j = pair col i.
            int src = -1;
            for (int i = 0; i < 2 * k; ++i)
                if (pk(j, i) == 1.0) src = i;
            const std::size_t o = (src < k) ? offsets[first] + src : offsets[second] + (src - k);
            for (std::size_t i = 0; i < n; ++i) rnew(i, col + j) = d.r(i, o);
        }
        col += 2 * static_cast<std::size_t>(k);
        new_pairs.push_back({RealBlockSpec::Kind::complex_pair, b.lambda, k, b.eigen_id});
    }

    out.blocks = std::move(new_real);
    out.blocks.insert(out.blocks.end(), new_pairs.begin(), new_pairs.end());
    out.r = std::move(rnew);
    out.r_inv = inverse(out.r);
    validate_reconstruction(out, std::max(1e-10, 1e-6 * max_abs_norm(out.a)));
    return out;
}

}  // namespace pfr
