#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fskan/types.hpp"

namespace fskan {

// Taylor coefficients a_k = f^(k)(eta0)/k! of the similarity equation
//
//     f''' + beta0*f*f'' + beta*(1 - f'^2) = 0,
//
// generated by the recurrence obtained from differentiating the equation
// k times and dividing by (k+3)!:
//
//   a_{k+3} = [ beta * sum_{l=0..k} (l+1)(k-l+1) a_{l+1} a_{k-l+1}
//             - beta0 * sum_{l=0..k} (l+1)(l+2) a_{l+2} a_{k-l}
//             - beta * delta_{k,0} ] / ((k+1)(k+2)(k+3)).
//
// a_0, a_1, a_2 come from the initial triple (f, f', f''/2) at eta0.
template <class Real>
CoeffBlock<Real> coefficients(const FlowParams& params, const InitialTriple<Real>& init,
                              int terms, double eta0 = 0.0)
{
    using fskan::isfinite;
    using std::isfinite;
    if (terms < 3)
        throw std::invalid_argument("coefficients: series order must be >= 3");
    if (!std::isfinite(params.beta0) || !std::isfinite(params.beta) || !std::isfinite(eta0))
        throw std::invalid_argument("coefficients: non-finite input");
    if (!isfinite(init.f) || !isfinite(init.fp) || !isfinite(init.fpp))
        throw std::invalid_argument("coefficients: non-finite initial triple");

    CoeffBlock<Real> b;
    b.eta0 = eta0;
    b.params = params;
    b.coeffs.resize(static_cast<size_t>(terms) + 1);
    auto& a = b.coeffs;
    a[0] = init.f;
    a[1] = init.fp;
    a[2] = init.fpp / 2.0;

    for (int k = 0; k + 3 <= terms; ++k) {
        Real s_fp2{};   // sum over the f'^2 convolution
        Real s_ffpp{};  // sum over the f*f'' convolution
        for (int l = 0; l <= k; ++l) {
            double w1 = static_cast<double>(l + 1) * static_cast<double>(k - l + 1);
            double w2 = static_cast<double>(l + 1) * static_cast<double>(l + 2);
            s_fp2 += a[static_cast<size_t>(l + 1)] * a[static_cast<size_t>(k - l + 1)] * w1;
            s_ffpp += a[static_cast<size_t>(l + 2)] * a[static_cast<size_t>(k - l)] * w2;
        }
        Real num = s_fp2 * params.beta - s_ffpp * params.beta0;
        if (k == 0) num -= params.beta;
        double den = static_cast<double>(k + 1) * static_cast<double>(k + 2) * static_cast<double>(k + 3);
        a[static_cast<size_t>(k + 3)] = num / den;
    }
    return b;
}

// Partial sums of the order-th derivative series at offset dEta from the
// expansion point. Element l is the degree-l truncation in dEta:
//
//   S_l = sum_{k=order}^{l+order} k(k-1)...(k-order+1) a_k dEta^(k-order).
//
// Terms are accumulated in ascending k with powers of dEta built by one
// multiplication per term, so identical inputs give bit-identical sums.
template <class Real>
std::vector<Real> derivative_partial_sums(const CoeffBlock<Real>& block, double dEta, int order)
{
    if (!std::isfinite(dEta))
        throw std::invalid_argument("derivative_partial_sums: non-finite dEta");
    if (order < 0 || order > 3)
        throw std::invalid_argument("derivative_partial_sums: order must be 0..3");

    const int K = block.order();
    const int len = K + 1 - order;
    if (len <= 0)
        throw std::invalid_argument("derivative_partial_sums: block too short for order");

    std::vector<Real> sums;
    sums.reserve(static_cast<size_t>(len));
    Real acc{};
    Real pw = scalar_traits<Real>::from_double(1.0);  // dEta^(k - order)
    for (int k = order; k <= K; ++k) {
        double w = 1.0;
        for (int j = 0; j < order; ++j) w *= static_cast<double>(k - j);
        acc += block.coeffs[static_cast<size_t>(k)] * w * pw;
        sums.push_back(acc);
        pw = pw * dEta;
    }
    return sums;
}

template <class Real>
struct SumSequences {
    std::vector<Real> f;    // K+1 elements
    std::vector<Real> fp;   // K elements
    std::vector<Real> fpp;  // K-1 elements
};

template <class Real>
SumSequences<Real> partial_sums(const CoeffBlock<Real>& block, double dEta)
{
    return SumSequences<Real>{
        derivative_partial_sums(block, dEta, 0),
        derivative_partial_sums(block, dEta, 1),
        derivative_partial_sums(block, dEta, 2),
    };
}

// Partial sums of f''' for residual checks.
template <class Real>
std::vector<Real> third_derivative_sum(const CoeffBlock<Real>& block, double dEta)
{
    return derivative_partial_sums(block, dEta, 3);
}

} // namespace fskan
