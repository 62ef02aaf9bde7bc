#pragma once

#include <functional>
#include <vector>

#include "hil/lfunc.hpp"

namespace hil {

struct ZeroScanReport {
    double t_lo = 0.0, t_hi = 0.0;
    std::vector<double> zeros;  // bracketed sign changes, bisected to loc_tol
    long evals = 0;
};

// Sign changes of a real-valued function on [t_lo, t_hi]; base grid step
// refined where |fn| dips against the running local scale, so close pairs of
// zeros are not stepped over.
ZeroScanReport scan_sign_changes(const std::function<double(double)>& fn,
                                 double t_lo, double t_hi,
                                 double base_step = 0.05,
                                 double loc_tol = 1e-9);

struct RectCount {
    long count = 0;               // zeros inside, by the argument principle
    double min_boundary_abs = 0;  // min |Lambda| seen on the contour
    int nudges = 0;               // boundary perturbations applied
    double s1, s2, t1, t2;        // the (possibly nudged) rectangle
    long evals = 0;
};

// Winding number of Lambda(s, f) around the rectangle [s1,s2] x [t1,t2].
// If the contour passes too close to a zero (min |Lambda| <= 10 * abs_err)
// the rectangle is nudged outward, three attempts, then
// BoundaryZeroSuspected.
RectCount count_zeros_rectangle(const HalfIntegralForm& f, double s1,
                                double s2, double t1, double t2,
                                double eps_abs = 1e-10);

struct OfflineZero {
    cplx s;
    double lambda_abs = 0.0;  // |Lambda| at the refined point
};

// Zeros of Lambda(s, f) in the rectangle with |Re s - sigma0| > line_tol,
// located by recursive subdivision + Newton refinement (numerical
// derivative, step 1e-6 (1 + |s|)).
std::vector<OfflineZero> find_offline_zeros(const HalfIntegralForm& f,
                                            double s1, double s2, double t1,
                                            double t2,
                                            double line_tol = 1e-3);

struct GrowthPoint {
    double T = 0.0;
    long n_plus = 0;   // sign changes of r_f on (0, T]
    long n_minus = 0;  // sign changes of i_f on (0, T]
};

struct GrowthReport {
    std::vector<GrowthPoint> points;
    double fitted_slope_plus = 0.0;  // least-squares N+(T) ~ slope * T
    bool i_f_degenerate = false;     // f|W = f makes i_f identically zero
};

GrowthReport n0_growth(const HalfIntegralForm& f,
                       const std::vector<double>& checkpoints,
                       double base_step = 0.05);

}  // namespace hil
