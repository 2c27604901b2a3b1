#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "fskan/series.hpp"
#include "fskan/types.hpp"

namespace fskan {

template <class Real>
struct AccelResult {
    Real value{};
    double err_estimate = std::numeric_limits<double>::infinity();
    bool converged = false;
    int column_used = -1;
    int terms_consumed = 0;
};

// Wynn-epsilon tableau fed one sequence term at a time. Each push extends
// the tableau by one anti-diagonal
//
//     eps_{-1}^(l) = 0,   eps_0^(l) = S_l,
//     eps_{k+1}^(l) = eps_{k-1}^(l+1) + 1/(eps_k^(l+1) - eps_k^(l)),
//
// of which only the last three are kept. Even columns estimate the limit;
// convergence is interrogated on the tail entries of even columns,
//
//     e = |(eps_i^(L-i) - eps_i^(L-i-2)) / eps_i^(L-i)|,  i = 2, 4, ...
//
// scanning in increasing i and accepting the deepest column with e < tol.
//
// Differences below a few ulps cannot be reciprocated; such entries become
// holes (NaN) that wash out diagonally instead of propagating Inf. Two
// entries of an even column k >= 2 agreeing to the ulp threshold mean that
// column has converged exactly. In column 0 the same test would be fooled
// by partial sums that merely stall (consecutive series coefficients can
// vanish: for beta = 0 blocks at the wall, the cubic and quartic terms are
// both zero), so raw sums must agree three pushes in a row before they
// count as exactly converged.
template <class Real>
class EpsilonAccelerator {
public:
    explicit EpsilonAccelerator(double tol)
        : tol_(tol), tiny_(4.0 * to_double(scalar_traits<Real>::epsilon()))
    {
        if (!(tol > 0.0))
            throw std::invalid_argument("EpsilonAccelerator: tol must be positive");
    }

    bool done() const { return done_; }
    int terms() const { return pushes_; }

    // Feeds S_L; returns true once the limit estimate has converged.
    //
    // Repeated sums never enter the tableau: series with structurally
    // vanishing coefficients (every wall block of the beta = 0 family has
    // only one nonzero coefficient in three) stall in short runs, and a
    // stalled difference cannot be reciprocated. A run of three or more
    // repeats is genuine convergence of the raw sums and is accepted as an
    // exact column-0 limit.
    bool push(Real s)
    {
        if (done_) return true;
        ++pushes_;
        last_term_ = s;

        if (fed_ > 0) {
            const double scale = std::max(1.0, std::abs(to_double(s)));
            if (std::abs(to_double(s - last_fed_)) < tiny_ * scale) {
                if (++stall_ >= 3) {
                    done_ = true;
                    result_.value = s;
                    result_.err_estimate = rel_err(s - last_fed_, s);
                    result_.converged = true;
                    result_.column_used = 0;
                    result_.terms_consumed = pushes_;
                }
                return done_;
            }
            stall_ = 0;
        }
        last_fed_ = s;
        const int L = fed_;
        ++fed_;

        std::vector<Real> cur(static_cast<size_t>(L) + 1);
        cur[0] = s;

        int best_col = -1;
        Real best_val{};
        double best_err = std::numeric_limits<double>::infinity();

        for (int k = 0; k < L; ++k) {
            const Real x = cur[static_cast<size_t>(k)];
            const Real y = prev_[static_cast<size_t>(k)];
            if (!isfinite_any(x) || !isfinite_any(y)) {
                hole_rest(cur, k + 1);
                break;
            }
            const Real diff = x - y;
            const double scale = std::max(1.0, std::abs(to_double(x)));
            if (std::abs(to_double(diff)) < tiny_ * scale) {
                if (k >= 2 && k % 2 == 0)
                    record(best_col, best_val, best_err, k, x, rel_err(diff, x));
                hole_rest(cur, k + 1);
                break;
            }
            const Real below = k == 0 ? Real{} : prev_[static_cast<size_t>(k - 1)];
            cur[static_cast<size_t>(k + 1)] = below + Real(1.0) / diff;
        }

        // Eq-style interrogation of even-column tails against the diagonal
        // two pushes back.
        for (int i = 2; i <= L - 2; i += 2) {
            const Real tail = cur[static_cast<size_t>(i)];
            const Real two_up = prev2_[static_cast<size_t>(i)];
            if (!isfinite_any(tail) || !isfinite_any(two_up)) continue;
            const double e = rel_err(tail - two_up, tail);
            if (e < best_seen_err_) {
                best_seen_err_ = e;
                best_seen_val_ = tail;
                best_seen_col_ = i;
            }
            if (e < tol_ && i >= best_col) record(best_col, best_val, best_err, i, tail, e);
        }

        prev3_ = std::move(prev2_);
        prev2_ = std::move(prev_);
        prev_ = std::move(cur);

        if (best_col >= 0) {
            done_ = true;
            result_.value = best_val;
            result_.err_estimate = best_err;
            result_.converged = true;
            result_.column_used = best_col;
            result_.terms_consumed = pushes_;
        }
        return done_;
    }

    AccelResult<Real> result() const
    {
        if (done_) return result_;
        AccelResult<Real> r;
        r.terms_consumed = pushes_;
        if (best_seen_col_ >= 0) {
            r.value = best_seen_val_;
            r.err_estimate = best_seen_err_;
            r.column_used = best_seen_col_;
        } else {
            r.value = last_term_;
            r.column_used = 0;
        }
        return r;
    }

    // Latest anti-diagonal (entry k is eps_k^(L-k)); holes are NaN.
    const std::vector<Real>& diagonal() const { return prev_; }

    // (column, e) pairs of the current even-column interrogation.
    std::vector<std::pair<int, double>> column_errors() const
    {
        std::vector<std::pair<int, double>> out;
        const int L = fed_ - 1;
        for (int i = 2; i <= L - 2; i += 2) {
            const Real tail = prev_[static_cast<size_t>(i)];
            const Real two_up = prev3_[static_cast<size_t>(i)];
            if (!isfinite_any(tail) || !isfinite_any(two_up)) continue;
            out.emplace_back(i, rel_err(tail - two_up, tail));
        }
        return out;
    }

private:
    static bool isfinite_any(const Real& x)
    {
        using fskan::isfinite;
        using std::isfinite;
        return isfinite(x);
    }

    static double rel_err(const Real& diff, const Real& ref)
    {
        const double d = std::abs(to_double(diff));
        const double r = std::abs(to_double(ref));
        if (r == 0.0) return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return d / r;
    }

    static void record(int& col, Real& val, double& err, int k, const Real& v, double e)
    {
        if (k >= col) {
            col = k;
            val = v;
            err = e;
        }
    }

    void hole_rest(std::vector<Real>& cur, int from)
    {
        const Real nan = scalar_traits<Real>::from_double(std::numeric_limits<double>::quiet_NaN());
        for (size_t i = static_cast<size_t>(from); i < cur.size(); ++i) cur[i] = nan;
    }

    double tol_;
    double tiny_;
    int pushes_ = 0;  // sequence terms consumed
    int fed_ = 0;     // distinct terms that entered the tableau
    int stall_ = 0;
    bool done_ = false;
    Real last_term_{};
    Real last_fed_{};
    AccelResult<Real> result_;
    std::vector<Real> prev_, prev2_, prev3_;
    int best_seen_col_ = -1;
    Real best_seen_val_{};
    double best_seen_err_ = std::numeric_limits<double>::infinity();
};

// Accelerated limit of a sequence of partial sums. Terms are consumed in
// order until the interrogation converges; on exhaustion the entry with
// the smallest error estimate is returned with converged = false.
template <class Real>
AccelResult<Real> epsilon_limit(std::span<const Real> seq, double tol)
{
    if (seq.size() < 3)
        throw std::invalid_argument("epsilon_limit: need at least 3 sequence terms");
    bool any_finite = false;
    for (const Real& s : seq) {
        using fskan::isfinite;
        using std::isfinite;
        if (isfinite(s)) { any_finite = true; break; }
    }
    if (!any_finite)
        throw std::invalid_argument("epsilon_limit: all-NaN input");

    EpsilonAccelerator<Real> acc(tol);
    for (const Real& s : seq)
        if (acc.push(s)) break;
    return acc.result();
}

template <class Real>
AccelResult<Real> epsilon_limit(const std::vector<Real>& seq, double tol)
{
    return epsilon_limit(std::span<const Real>(seq), tol);
}

// Accelerated evaluation of one series block at offset dEta: the epsilon
// limit of each of the three partial-sum sequences from partial_sums.
template <class Real>
StateTriple<Real> accelerated_triple(const CoeffBlock<Real>& block, double dEta, double tol)
{
    if (block.order() < 5)
        throw std::invalid_argument("accelerated_triple: block order must be >= 5");
    if (!std::isfinite(dEta))
        throw std::invalid_argument("accelerated_triple: non-finite dEta");

    StateTriple<Real> out;
    out.eta = block.eta0 + dEta;

    static constexpr const char* names[3] = {"f", "fp", "fpp"};
    Real* slots[3] = {&out.f, &out.fp, &out.fpp};
    for (int order = 0; order < 3; ++order) {
        auto seq = derivative_partial_sums(block, dEta, order);
        auto r = epsilon_limit<Real>(seq, tol);
        if (!r.converged)
            throw NonConvergence(names[order], r.err_estimate);
        *slots[order] = r.value;
    }
    return out;
}

} // namespace fskan
