#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "soliton/lambda_poly.hpp"

namespace soliton {

using cplx = std::complex<double>;

// Closed-form test solution: jets of each base symbol at a point, plus values
// for constant symbols.
class JetProvider {
public:
    virtual ~JetProvider() = default;
    virtual std::string name() const = 0;
    virtual std::map<std::string, double> params() const = 0;
    virtual int max_order() const = 0;
    virtual std::vector<std::string> bases() const = 0;
    // jets[name][k] = k-th derivative at x
    virtual std::map<std::string, std::vector<cplx>> jets(double x) const = 0;
    virtual std::map<std::string, cplx> constants() const { return {}; }
};

using ProviderPtr = std::shared_ptr<const JetProvider>;

// q = 2 kappa^2 sech^2(kappa x)
ProviderPtr provider_kdv_soliton(double kappa, int max_order = 10);

enum class NlsKind { plane_wave, bright };

struct NlsParams {
    NlsKind kind = NlsKind::plane_wave;
    double C = 1.0;     // plane wave amplitude
    double k = 0.0;     // plane wave wave number
    double omega = 0.5; // bright soliton, amplitude sqrt(2 omega)
    double velocity = 0.0; // bright soliton phase factor exp(-i v x)
    int sigma = 1;
};

// q = C exp(-i k x) or q = a sech(a x) exp(-i v x), a = sqrt(2 omega); qbar gets
// the conjugate jets.
ProviderPtr provider_nls(const NlsParams& p, int max_order = 10);

struct Grid {
    double a = -1.0, b = 1.0;
    int n = 1001;
    double at(int i) const { return n == 1 ? a : a + (b - a) * i / (n - 1); }
};

cplx eval(const DiffPoly& expr, const JetProvider& prov, double x);
cplx eval(const LambdaPoly& expr, const JetProvider& prov, double x, cplx lambda);
// evaluates at a precomputed jet table (for grids)
cplx eval_at(const DiffPoly& expr, const std::map<std::string, std::vector<cplx>>& jets,
             const std::map<std::string, cplx>& constants);

struct GridDetail {
    double x;
    cplx value;
    double deviation;
    bool flagged = false;
};

struct VerifyReport {
    std::string check;
    Grid grid;
    double max_abs_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
    std::vector<GridDetail> details;
};

// deviation = max |v - mean|, pass iff deviation <= tol (1 + |mean|)
VerifyReport constancy_check(const std::string& check, const DiffPoly& expr, const JetProvider& prov,
                             const Grid& grid, double tol);

// Roots of phi(x, .) via companion-matrix eigenvalues, sorted by (re, im).
std::vector<cplx> phi_roots(const LambdaPoly& phi, const JetProvider& prov, double x);

struct CurvePoint {
    double x;
    int k;
    cplx lambda;
    cplx Y; // phi'(x, lambda)
};

std::vector<CurvePoint> curve_points(const LambdaPoly& phi, const JetProvider& prov, const Grid& grid,
                                     double perturb = 0.0);

// |H(lambda_k) + Y^2/2| <= tol
VerifyReport curve_membership(const std::vector<CurvePoint>& points, const LambdaPoly& H,
                              const JetProvider& prov, double tol);

struct AbelOptions {
    double h = 1e-4;             // 5-point centred stencil step
    double branch_eps = 1e-6;    // |Y| <= eps (1 + |lambda|) marks a branch point
    double max_flagged = 0.01;   // allowed fraction of flagged grid points
    double branch_sign = 1.0;    // -1 flips the branch of sqrt(R)
};

// sum_k lambda_k^(mu-1) lambda_k' / Y_k against 0 (mu < n) or -1/A0 (mu = n)
VerifyReport abel_sum_check(const LambdaPoly& phi, const JetProvider& prov, int mu, const Grid& grid,
                            double tol, const AbelOptions& opt = {});

} // namespace soliton
