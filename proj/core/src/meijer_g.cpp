// SPDX-License-Identifier: Apache-2.0
#include "risfso/meijer_g.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>

namespace risfso {

namespace {

using cplx = std::complex<double>;
constexpr double kPerturb = 1e-6;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool near_integer(double x, double tol = 1e-9)
{
    return std::fabs(x - std::round(x)) < tol;
}

bool is_pole(double x)
{
    return x <= 0.0 && near_integer(x, 1e-12);
}

struct Signed {
    double log_abs = kNegInf;
    int sign = 0;
    double rel_err = 0.0;
};

// Running signed sum of exp(log) terms with rescaling.
class LogSum {
public:
    void add(double log_abs, int sign)
    {
        if (sign == 0 || log_abs == kNegInf) {
            return;
        }
        max_term_ = std::max(max_term_, log_abs);
        if (log_abs > scale_) {
            acc_ *= std::exp(scale_ - log_abs);
            scale_ = log_abs;
        }
        acc_ += sign * std::exp(log_abs - scale_);
    }
    Signed result() const
    {
        if (acc_ == 0.0) {
            return {};
        }
        return {scale_ + std::log(std::fabs(acc_)), acc_ > 0.0 ? 1 : -1};
    }
    double max_term() const { return max_term_; }

private:
    double scale_ = kNegInf;
    double acc_ = 0.0;
    double max_term_ = kNegInf;
};

std::vector<double> separate_b(const MeijerGSpec& spec, bool* perturbed)
{
    std::vector<double> b = spec.b_params;
    *perturbed = false;
    for (int j = 1; j < spec.m; ++j) {
        for (int pass = 0; pass < 8; ++pass) {
            bool clash = false;
            for (int h = 0; h < j; ++h) {
                if (near_integer(b[j] - b[h])) {
                    clash = true;
                }
            }
            if (!clash) {
                break;
            }
            b[j] += kPerturb;
            *perturbed = true;
        }
    }
    return b;
}

void check_pinch(const MeijerGSpec& spec, const std::vector<double>& b)
{
    for (int j = 0; j < spec.n; ++j) {
        for (int h = 0; h < spec.m; ++h) {
            const double d = spec.a_params[j] - b[h];
            if (d > 0.5 && near_integer(d)) {
                throw PoleCoincidenceError("meijer_g: poles of Gamma(b_h - s) and Gamma(1 - a_j + s) coincide");
            }
        }
    }
}

// log|t_0| and sign of the first residue term for pole family h.
bool first_term(const MeijerGSpec& spec, const std::vector<double>& b, int h, double lz, double* log_abs, int* sign,
                double* magnitude)
{
    const double bh = b[h];
    double lt = bh * lz;
    double mag = std::fabs(lt);
    int sg = 1;
    auto acc = [&](double x, int dir) {
        int s = 1;
        const double v = lgamma_signed(x, &s);
        lt += dir * v;
        mag += std::fabs(v);
        sg *= s;
    };
    for (int j = 0; j < spec.m; ++j) {
        if (j != h) {
            acc(b[j] - bh, +1);
        }
    }
    for (int j = 0; j < spec.n; ++j) {
        acc(1.0 - spec.a_params[j] + bh, +1);
    }
    for (int j = spec.m; j < spec.q; ++j) {
        if (is_pole(1.0 - b[j] + bh)) {
            return false;
        }
        acc(1.0 - b[j] + bh, -1);
    }
    for (int j = spec.n; j < spec.p; ++j) {
        if (is_pole(spec.a_params[j] - bh)) {
            *sign = 0;
            *log_abs = kNegInf;
            *magnitude = 0.0;
            return true;
        }
        acc(spec.a_params[j] - bh, -1);
    }
    *log_abs = lt;
    *sign = sg;
    *magnitude = mag;
    return true;
}

// Residue series over the poles s = b_h + k of Gamma(b_h - s). Each family is
// generated from its first term by the term ratio, so the large log-gamma
// values enter only once per family.
std::optional<Signed> residue_series(const MeijerGSpec& spec, const std::vector<double>& b, double z, bool strict)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double lz = std::log(z);
    LogSum total;
    std::vector<Signed> families;
    std::vector<double> family_err;
    for (int h = 0; h < spec.m; ++h) {
        const double bh = b[h];
        double lt = 0.0;
        int sg = 0;
        double mag = 0.0;
        if (!first_term(spec, b, h, lz, &lt, &sg, &mag)) {
            return std::nullopt;
        }
        if (sg == 0) {
            continue;
        }
        LogSum fam;
        fam.add(lt, sg);
        bool decreasing = false;
        int small_run = 0;
        bool converged = false;
        int k = 0;
        for (; k < 50000; ++k) {
            double num = -z / (k + 1.0);
            double den = 1.0;
            for (int j = 0; j < spec.n; ++j) {
                num *= 1.0 - spec.a_params[j] + bh + k;
            }
            for (int j = spec.n; j < spec.p; ++j) {
                num *= spec.a_params[j] - bh - k - 1.0;
            }
            for (int j = 0; j < spec.m; ++j) {
                if (j != h) {
                    den *= b[j] - bh - k - 1.0;
                }
            }
            for (int j = spec.m; j < spec.q; ++j) {
                den *= 1.0 - b[j] + bh + k;
            }
            if (num == 0.0) {
                converged = true;
                break;
            }
            if (den == 0.0 || !std::isfinite(num) || !std::isfinite(den)) {
                return std::nullopt;
            }
            const double r = num / den;
            const double lr = std::log(std::fabs(r));
            if (lr < 0.0) {
                decreasing = true;
            }
            lt += lr;
            sg *= (r > 0.0) ? 1 : -1;
            fam.add(lt, sg);
            const Signed now = fam.result();
            if (decreasing && lt < std::max(now.log_abs, fam.max_term() - 40.0) - 40.0) {
                if (++small_run >= 3) {
                    converged = true;
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        if (!converged) {
            return std::nullopt;
        }
        const Signed f = fam.result();
        if (f.sign == 0) {
            continue;
        }
        // Rounding in the summed terms plus the error of the shared prefactor.
        const double err = std::exp(fam.max_term() - f.log_abs) * 4.0 * eps * (k + 2) + 4.0 * eps * (mag + 1.0);
        families.push_back(f);
        family_err.push_back(err);
        total.add(f.log_abs, f.sign);
    }
    const Signed r = total.result();
    if (r.sign == 0) {
        return std::nullopt;
    }
    double err = 0.0;
    for (std::size_t i = 0; i < families.size(); ++i) {
        err += std::exp(families[i].log_abs - r.log_abs) * family_err[i];
    }
    if (strict && !(err < 1e-9)) {
        return std::nullopt;
    }
    return Signed{r.log_abs, r.sign, err};
}

// Adaptive Gauss-Kronrod with an absolute error budget per unit length.
template <class F>
double adaptive_gk(F& f, double a, double b, double tol_density, double noise, int depth)
{
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err, &l1);
    if (err <= std::max(tol_density * (b - a), noise * l1) || depth >= 20) {
        return v;
    }
    const double mid = 0.5 * (a + b);
    return adaptive_gk(f, a, mid, tol_density, noise, depth + 1) + adaptive_gk(f, mid, b, tol_density, noise, depth + 1);
}

// log of the Mellin-Barnes integrand Phi(s) z^s.
cplx log_integrand(const MeijerGSpec& spec, const std::vector<double>& b, double lz, cplx s)
{
    cplx acc = s * lz;
    for (int j = 0; j < spec.m; ++j) {
        acc += lgamma_complex(b[j] - s);
    }
    for (int j = 0; j < spec.n; ++j) {
        acc += lgamma_complex(1.0 - spec.a_params[j] + s);
    }
    for (int j = spec.m; j < spec.q; ++j) {
        acc -= lgamma_complex(1.0 - b[j] + s);
    }
    for (int j = spec.n; j < spec.p; ++j) {
        acc -= lgamma_complex(spec.a_params[j] - s);
    }
    return acc;
}

// Sum of |log Gamma| pieces on the real axis, a proxy for the absolute
// rounding error of log_integrand.
double gamma_magnitude(const MeijerGSpec& spec, const std::vector<double>& b, double lz, double c)
{
    double mag = std::fabs(c * lz);
    for (int j = 0; j < spec.m; ++j) {
        mag += std::fabs(lgamma_signed(b[j] - c, nullptr));
    }
    for (int j = 0; j < spec.n; ++j) {
        mag += std::fabs(lgamma_signed(1.0 - spec.a_params[j] + c, nullptr));
    }
    for (int j = spec.m; j < spec.q; ++j) {
        mag += std::fabs(lgamma_signed(1.0 - b[j] + c, nullptr));
    }
    for (int j = spec.n; j < spec.p; ++j) {
        mag += std::fabs(lgamma_signed(spec.a_params[j] - c, nullptr));
    }
    return mag;
}

Signed contour(const MeijerGSpec& spec, const std::vector<double>& b, double z)
{
    const double lz = std::log(z);
    double hi = std::numeric_limits<double>::infinity();
    for (int j = 0; j < spec.m; ++j) {
        hi = std::min(hi, b[j]);
    }
    double lo = kNegInf;
    for (int j = 0; j < spec.n; ++j) {
        lo = std::max(lo, spec.a_params[j] - 1.0);
    }
    if (!(lo < hi)) {
        throw PoleCoincidenceError("meijer_g: no vertical contour separates the pole sets");
    }
    auto ell = [&](double c) {
        const double v = log_integrand(spec, b, lz, cplx(c, 0.0)).real();
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };
    double left;
    double right = hi - 1e-9 * std::max(1.0, std::fabs(hi));
    if (std::isfinite(lo)) {
        left = lo + 1e-9 * std::max(1.0, std::fabs(lo));
    } else {
        double d = 1.0;
        while (d < 1e9 && ell(hi - 2.0 * d) < ell(hi - d)) {
            d *= 2.0;
        }
        left = hi - 2.0 * d;
    }
    const auto mn = boost::math::tools::brent_find_minima(ell, left, right, 50);
    const double c = mn.first;
    const double l0 = mn.second;

    // Gaussian width of the integrand around y = 0.
    const double hstep = 1e-3 * std::max(1.0, std::min(c - left, right - c));
    double curv = (ell(c + hstep) - 2.0 * l0 + ell(c - hstep)) / (hstep * hstep);
    if (!(curv > 0.0) || !std::isfinite(curv)) {
        curv = 1.0;
    }
    const double w0 = std::clamp(1.0 / std::sqrt(curv), 1e-6, 10.0);

    auto f = [&](double y) {
        const cplx L = log_integrand(spec, b, lz, cplx(c, y));
        return std::exp(L.real() - l0) * std::cos(L.imag());
    };
    auto mag = [&](double y) { return log_integrand(spec, b, lz, cplx(c, y)).real() - l0; };

    // Scale of the integral from the central lobe; used to set an absolute
    // tolerance for the oscillating tail.
    // exp(L - l0) carries the rounding of the large log-gamma sums.
    const double noise = std::max(100.0 * std::numeric_limits<double>::epsilon(),
                                  8.0 * std::numeric_limits<double>::epsilon() * gamma_magnitude(spec, b, lz, c));
    double err = 0.0;
    const double central =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 3.0 * w0, 15, std::max(1e-12, 10.0 * noise), &err);
    const double scale = std::max(std::fabs(central), 1e-300);

    double y_end = 3.0 * w0;
    int below = 0;
    while (below < 2) {
        if (mag(y_end) < std::log(1e-17 * scale)) {
            ++below;
        } else {
            below = 0;
        }
        y_end *= 1.5;
        if (y_end > 1e7) {
            throw DomainError("meijer_g: contour integrand does not decay");
        }
    }

    const double tol_density = 1e-13 * scale / y_end;
    double integral = central;
    double a = 3.0 * w0;
    double width = 3.0 * w0;
    while (a < y_end) {
        const double bnd = std::min(a + width, y_end);
        integral += adaptive_gk(f, a, bnd, tol_density, noise, 0);
        a = bnd;
        width *= 1.5;
    }
    if (integral == 0.0) {
        return {};
    }
    return {l0 + std::log(std::fabs(integral)) - std::log(std::numbers::pi), integral > 0.0 ? 1 : -1};
}

} // namespace

double MeijerGResult::value() const
{
    if (sign == 0) {
        return 0.0;
    }
    return sign * std::exp(log_abs);
}

bool is_supported_class(int m, int n, int p, int q)
{
    struct C {
        int m, n, p, q;
    };
    static constexpr C classes[] = {{1, 0, 0, 1}, {2, 0, 0, 2}, {3, 0, 1, 3},
                                    {3, 1, 2, 4}, {4, 0, 2, 4}, {4, 1, 2, 4}};
    return std::any_of(std::begin(classes), std::end(classes),
                       [&](const C& c) { return c.m == m && c.n == n && c.p == p && c.q == q; });
}

void check_spec(const MeijerGSpec& spec)
{
    if (spec.m < 0 || spec.n < 0 || spec.m > spec.q || spec.n > spec.p || spec.p > 6 || spec.q > 6) {
        throw UnsupportedClassError("meijer_g: invalid (m,n,p,q)");
    }
    if (static_cast<int>(spec.a_params.size()) != spec.p || static_cast<int>(spec.b_params.size()) != spec.q) {
        throw UnsupportedClassError("meijer_g: parameter list lengths do not match (p,q)");
    }
    if (!is_supported_class(spec.m, spec.n, spec.p, spec.q)) {
        throw UnsupportedClassError("meijer_g: unsupported class");
    }
    for (double v : spec.a_params) {
        if (!std::isfinite(v)) {
            throw DomainError("meijer_g: non-finite parameter");
        }
    }
    for (double v : spec.b_params) {
        if (!std::isfinite(v)) {
            throw DomainError("meijer_g: non-finite parameter");
        }
    }
}

MeijerGResult meijer_g_eval(const MeijerGSpec& spec, double z, MeijerMethod method)
{
    check_spec(spec);
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("meijer_g: z must be positive and finite");
    }
    MeijerGResult out;
    out.b_used = separate_b(spec, &out.perturbed);
    check_pinch(spec, out.b_used);

    if (method != MeijerMethod::Contour) {
        const auto r = residue_series(spec, out.b_used, z, method == MeijerMethod::Auto);
        if (r) {
            out.log_abs = r->log_abs;
            out.sign = r->sign;
            out.error_estimate = r->rel_err;
            out.method = MeijerMethod::Residue;
            return out;
        }
        if (method == MeijerMethod::Residue) {
            throw DomainError("meijer_g: residue series failed to converge accurately");
        }
    }
    const Signed r = contour(spec, out.b_used, z);
    out.log_abs = r.log_abs;
    out.sign = r.sign;
    out.method = MeijerMethod::Contour;
    return out;
}

double meijer_g(const MeijerGSpec& spec, double z)
{
    return meijer_g_eval(spec, z).value();
}

std::string to_string(MeijerMethod method)
{
    switch (method) {
    case MeijerMethod::Residue:
        return "residue";
    case MeijerMethod::Contour:
        return "contour";
    default:
        return "auto";
    }
}

} // namespace risfso
