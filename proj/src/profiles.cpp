#include "annuli/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace annuli {

namespace {

void check_matching_dimension(const Annulus& domain, const Annulus& target) {
    if (domain.n != target.n)
        throw std::invalid_argument("domain and target annuli must share the dimension n");
}

double nu_of(const Annulus& a) { return 1.0 / (a.n - 2); }

// Monotonicity-preserving cubic Hermite interpolant. Node slopes come
// from a local cubic fit (order falls back on short data) and are then
// clipped into the |d| <= 3|delta| box on both adjacent intervals, which
// is sufficient for the interpolant to stay monotone.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> t, std::vector<double> y)
        : t_(std::move(t)), y_(std::move(y)) {
        const std::size_t m = t_.size();
        std::vector<double> delta(m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i)
            delta[i] = (y_[i + 1] - y_[i]) / (t_[i + 1] - t_[i]);

        d_.resize(m);
        if (m == 2) {
            d_[0] = d_[1] = delta[0];
        } else {
            for (std::size_t i = 0; i < m; ++i) d_[i] = local_fit_slope(i);
        }

        const bool increasing = delta[0] > 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double left = i > 0 ? delta[i - 1] : delta[i];
            double right = i + 1 < m ? delta[i] : delta[i - 1];
            if (increasing)
                d_[i] = std::clamp(d_[i], 0.0, 3.0 * std::min(left, right));
            else
                d_[i] = std::clamp(d_[i], 3.0 * std::max(left, right), 0.0);
        }
    }

    double eval(double x) const {
        if (x <= t_.front()) return y_.front() + d_.front() * (x - t_.front());
        if (x >= t_.back()) return y_.back() + d_.back() * (x - t_.back());
        std::size_t i = interval(x);
        double h = t_[i + 1] - t_[i];
        double s = (x - t_[i]) / h;
        double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        double h10 = s * (1.0 - s) * (1.0 - s);
        double h01 = s * s * (3.0 - 2.0 * s);
        double h11 = s * s * (s - 1.0);
        return y_[i] * h00 + h * d_[i] * h10 + y_[i + 1] * h01 + h * d_[i + 1] * h11;
    }

    double deriv(double x) const {
        if (x <= t_.front()) return d_.front();
        if (x >= t_.back()) return d_.back();
        std::size_t i = interval(x);
        double h = t_[i + 1] - t_[i];
        double s = (x - t_[i]) / h;
        double g00 = 6.0 * s * (s - 1.0);
        double g10 = 3.0 * s * s - 4.0 * s + 1.0;
        double g01 = -g00;
        double g11 = 3.0 * s * s - 2.0 * s;
        return (y_[i] * g00 + y_[i + 1] * g01) / h + d_[i] * g10 + d_[i + 1] * g11;
    }

private:
    std::size_t interval(double x) const {
        auto it = std::upper_bound(t_.begin(), t_.end(), x);
        return static_cast<std::size_t>(it - t_.begin()) - 1;
    }

    // Derivative at node i of the cubic (or lower-order) Lagrange
    // polynomial through up to four nearby nodes.
    double local_fit_slope(std::size_t i) const {
        const std::size_t m = t_.size();
        std::size_t span = std::min<std::size_t>(4, m);
        std::size_t j = i >= 1 ? i - 1 : 0;
        j = std::min(j, m - span);
        double slope = 0.0;
        for (std::size_t k = j; k < j + span; ++k) {
            double sum = 0.0;
            for (std::size_t l = j; l < j + span; ++l) {
                if (l == k) continue;
                double prod = 1.0;
                for (std::size_t q = j; q < j + span; ++q) {
                    if (q == k || q == l) continue;
                    prod *= (t_[i] - t_[q]) / (t_[k] - t_[q]);
                }
                sum += prod / (t_[k] - t_[l]);
            }
            slope += y_[k] * sum;
        }
        return slope;
    }

    std::vector<double> t_, y_, d_;
};

}  // namespace

double alpha(double t, const Annulus& domain) {
    if (!(t >= domain.inner && t <= domain.outer))
        throw std::invalid_argument("alpha: t must lie in [inner, outer]");
    double nu = nu_of(domain);
    double rn = std::pow(domain.inner, nu);
    double Rn = std::pow(domain.outer, nu);
    double tn = std::pow(t, nu);
    return Rn * (tn - rn) / (tn * (Rn - rn));
}

double alpha_derivative(double t, const Annulus& domain) {
    if (!(t >= domain.inner && t <= domain.outer))
        throw std::invalid_argument("alpha_derivative: t must lie in [inner, outer]");
    double nu = nu_of(domain);
    double rn = std::pow(domain.inner, nu);
    double Rn = std::pow(domain.outer, nu);
    return nu * Rn * rn / (Rn - rn) * std::pow(t, -nu - 1.0);
}

RadialProfile make_boundary_profile(const Annulus& domain, const Annulus& target,
                                    Orientation orientation) {
    check_matching_dimension(domain, target);
    const double log_ratio = target.log_ratio();
    const double sign = orientation == Orientation::increasing ? 1.0 : -1.0;
    const double base = orientation == Orientation::increasing ? target.inner : target.outer;

    auto eval = [domain, base, sign, log_ratio](double t) {
        return base * std::exp(sign * log_ratio * alpha(t, domain));
    };
    auto deriv = [domain, eval, sign, log_ratio](double t) {
        return eval(t) * sign * log_ratio * alpha_derivative(t, domain);
    };
    return RadialProfile{domain, target, eval, deriv, orientation,
                         orientation == Orientation::increasing ? "boundary-increasing"
                                                                : "boundary-decreasing"};
}

RadialProfile make_tabulated_profile(const std::vector<double>& knots_t,
                                     const std::vector<double>& knots_h,
                                     const Annulus& domain, const Annulus& target) {
    check_matching_dimension(domain, target);
    if (knots_t.size() != knots_h.size())
        throw std::invalid_argument("tabulated profile: abscissa/ordinate counts differ");
    if (knots_t.size() < 2)
        throw std::invalid_argument("tabulated profile: at least two knots required");

    for (std::size_t i = 0; i < knots_t.size(); ++i)
        if (!std::isfinite(knots_t[i]) || !std::isfinite(knots_h[i]))
            throw std::invalid_argument("tabulated profile: non-finite knot");
    for (std::size_t i = 0; i + 1 < knots_t.size(); ++i)
        if (!(knots_t[i] < knots_t[i + 1]))
            throw std::invalid_argument("tabulated profile: abscissae must strictly increase");

    const double dir = knots_h.back() - knots_h.front();
    if (dir == 0.0)
        throw std::invalid_argument("tabulated profile: ordinates must be strictly monotone");
    for (std::size_t i = 0; i + 1 < knots_h.size(); ++i) {
        double step = knots_h[i + 1] - knots_h[i];
        if (!(step * dir > 0.0))
            throw std::invalid_argument(
                "tabulated profile: ordinates must be strictly monotone (violation at knot " +
                std::to_string(i + 1) + ")");
    }

    const double span_tol_t = 1e-9 * domain.width();
    if (std::abs(knots_t.front() - domain.inner) > span_tol_t ||
        std::abs(knots_t.back() - domain.outer) > span_tol_t)
        throw std::invalid_argument("tabulated profile: abscissae must span [inner, outer]");

    const Orientation orientation = dir > 0.0 ? Orientation::increasing : Orientation::decreasing;
    const double h_first = orientation == Orientation::increasing ? target.inner : target.outer;
    const double h_last = orientation == Orientation::increasing ? target.outer : target.inner;
    const double span_tol_h = 1e-9 * target.width();
    if (std::abs(knots_h.front() - h_first) > span_tol_h ||
        std::abs(knots_h.back() - h_last) > span_tol_h)
        throw std::invalid_argument("tabulated profile: ordinates must span the target radii");

    auto spline = std::make_shared<const MonotoneCubic>(knots_t, knots_h);
    auto eval = [spline](double t) { return spline->eval(t); };
    auto deriv = [spline](double t) { return spline->deriv(t); };
    return RadialProfile{domain, target, eval, deriv, orientation, "tabulated"};
}

RadialProfile load_profile_csv(const std::string& path, const Annulus& domain,
                               const Annulus& target) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open profile CSV: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("profile CSV is empty: " + path);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line != "t,H")
        throw std::invalid_argument("profile CSV must start with header 't,H': " + path);

    std::vector<double> ts, hs;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw std::invalid_argument("profile CSV: malformed row at line " +
                                        std::to_string(line_no));
        try {
            ts.push_back(std::stod(a));
            hs.push_back(std::stod(b));
        } catch (const std::exception&) {
            throw std::invalid_argument("profile CSV: unparseable number at line " +
                                        std::to_string(line_no));
        }
    }
    RadialProfile p = make_tabulated_profile(ts, hs, domain, target);
    p.tag = "tabulated:" + path;
    return p;
}

RadialProfile invert_profile(const RadialProfile& profile, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("invert_profile: c must be positive");
    Annulus new_target(profile.target.n, c / profile.target.outer, c / profile.target.inner);
    auto base_eval = profile.eval;
    auto base_deriv = profile.deriv;
    auto eval = [base_eval, c](double t) { return c / base_eval(t); };
    auto deriv = [base_eval, base_deriv, c](double t) {
        double h = base_eval(t);
        return -c * base_deriv(t) / (h * h);
    };
    Orientation flipped = profile.orientation == Orientation::increasing
                              ? Orientation::decreasing
                              : Orientation::increasing;
    return RadialProfile{profile.domain, new_target, eval, deriv, flipped,
                         profile.tag + "-inverted"};
}

double log_derivative(const RadialProfile& profile, double t) {
    return profile.log_derivative(t);
}

}  // namespace annuli
