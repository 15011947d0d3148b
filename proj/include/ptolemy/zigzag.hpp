#pragma once

#include "ptolemy/geodesy.hpp"

#include <vector>

namespace ptolemy {

struct ZigzagSpec {
    ModelPtr model;
    Vec o;
    // Only the directions matter: step i follows the line of lines[i]'s
    // foliation through the current vertex.
    std::vector<OrientedLine> lines;
    std::vector<double> S;
    int p_max = 14;
};

// Vertices v_p^n for n_lo <= n <= n_hi (n_lo <= 0 <= n_hi), v_p^0 = o. Step n
// moves by s_i / 2^(p-1) along line i = (n - 1) mod k; negative indices walk
// the cycle backwards with reversed orientations.
std::vector<Vec> zigzag_polygon(const ZigzagSpec& spec, int p, long n_lo, long n_hi);

struct ZigzagResult {
    // gamma(t) sampled at t_j = j * sum(S) / 8, |t_j| <= 2 sum(S), at depth p_max.
    std::vector<double> t;
    std::vector<Vec> gamma;
    std::vector<int> depths;
    // Chart-norm gap between consecutive depths, and the allowed C 2^-p.
    std::vector<double> cauchy_gap, cauchy_bound;
    // Non-horizontal part of o^-1 gamma_p, maximized over the grid.
    std::vector<double> drift;
    int certified_depth = -1;
    double diameter = 0;
    bool degenerate = false;
    bool analytic_degenerate = false;
    double lambda = 0;
    double speed_residual = 0;
    OrientedLine limit_line;
};

ZigzagResult zigzag_limit(const ZigzagSpec& spec);

// |slope(limit, l_i) + s_i / (lambda sum(S))|, i.e. the speed law with the
// weights normalized to sum 1.
double zigzag_slope_check(const ZigzagSpec& spec, const ZigzagResult& res, std::size_t i);

// max_t |b(gamma(t)) - b(o) - beta t| with beta = sum alpha_i s_i / sum s_i,
// alpha_i = slope(l_i, l).
double zigzag_beta_check(const ZigzagSpec& spec, const ZigzagResult& res, const OrientedLine& l);

struct OrthogonalizeResult {
    bool degenerate = false;
    double sum_alpha_sq = 0;
    std::vector<double> alphas;
    std::vector<OrientedLine> oriented_frame;
    OrientedLine line;
};

OrthogonalizeResult orthogonalize(const ModelPtr& model, const MPoint& omega,
                                  const std::vector<OrientedLine>& existing, const OrientedLine& l,
                                  const Vec& o, int p_max = 14);

}  // namespace ptolemy
