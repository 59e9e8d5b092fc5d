#include "lockup/friction.hpp"

#include "lockup/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace lockup {

namespace {

void check_slip(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        std::ostringstream os;
        os << "slip " << lambda << " outside [0, 1]";
        throw DomainError(os.str());
    }
}

double eval_table(const TabulatedFriction& table, double lambda) {
    const auto& k = table.knots;
    if (lambda <= k.front().first) return k.front().second;
    if (lambda >= k.back().first) return k.back().second;
    auto hi = std::upper_bound(k.begin(), k.end(), lambda,
                               [](double x, const auto& knot) { return x < knot.first; });
    auto lo = std::prev(hi);
    if (lambda == lo->first) return lo->second;
    const double w = (lambda - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
}

double eval_kind(const FrictionModel::Kind& kind, double lambda) {
    return std::visit(
        [lambda](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BurckhardtParams>) {
                return burckhardt_mu(m, lambda);
            } else if constexpr (std::is_same_v<T, ZeroFriction>) {
                return 0.0;
            } else {
                return eval_table(m, lambda);
            }
        },
        kind);
}

FrictionExtrema grid_extrema(const FrictionModel::Kind& kind, int n) {
    FrictionExtrema ex{std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < n; ++i) {
        const double lambda = static_cast<double>(i) / (n - 1);
        const double mu = eval_kind(kind, lambda);
        ex.mu_min = std::min(ex.mu_min, mu);
        if (mu > ex.mu_max) {
            ex.mu_max = mu;
            ex.lambda_argmax = lambda;
        }
    }
    return ex;
}

// Burckhardt mu is concave, so the maximum is the root of mu' when it lies
// inside (0, 1) and the minimum sits at an endpoint.
void refine_burckhardt(const BurckhardtParams& c, int n, FrictionExtrema& ex) {
    const double h = 1.0 / (n - 1);
    double lo = std::max(0.0, ex.lambda_argmax - h);
    double hi = std::min(1.0, ex.lambda_argmax + h);
    if (burckhardt_dmu(c, lo) <= 0.0 || burckhardt_dmu(c, hi) >= 0.0) return;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (burckhardt_dmu(c, mid) > 0.0 ? lo : hi) = mid;
    }
    const double arg = 0.5 * (lo + hi);
    const double mu = burckhardt_mu(c, arg);
    if (mu >= ex.mu_max) {
        ex.mu_max = mu;
        ex.lambda_argmax = arg;
    }
}

void refine_table(const TabulatedFriction& t, FrictionExtrema& ex) {
    for (const auto& [lambda, mu] : t.knots) {
        ex.mu_min = std::min(ex.mu_min, mu);
        if (mu > ex.mu_max) {
            ex.mu_max = mu;
            ex.lambda_argmax = lambda;
        }
    }
}

}  // namespace

FrictionModel::FrictionModel(Kind kind) : kind_(std::move(kind)) {
    extrema_ = mu_extrema(*this, kExtremaGrid);
}

FrictionModel FrictionModel::burckhardt(const BurckhardtParams& p) {
    if (!(std::isfinite(p.c1) && std::isfinite(p.c2) && std::isfinite(p.c3)))
        throw DomainError("Burckhardt coefficients must be finite");
    if (!(p.c1 > 0.0)) throw DomainError("Burckhardt c1 must be > 0");
    if (!(p.c2 > 0.0)) throw DomainError("Burckhardt c2 must be > 0");
    if (!(p.c3 >= 0.0)) throw DomainError("Burckhardt c3 must be >= 0");
    return FrictionModel(p);
}

FrictionModel FrictionModel::zero() { return FrictionModel(ZeroFriction{}); }

FrictionModel FrictionModel::tabulated(std::vector<std::pair<double, double>> knots) {
    if (knots.empty()) throw DomainError("friction table needs at least one knot");
    std::sort(knots.begin(), knots.end());
    for (std::size_t i = 0; i < knots.size(); ++i) {
        check_slip(knots[i].first);
        if (!std::isfinite(knots[i].second)) throw DomainError("friction table value not finite");
        if (i > 0 && knots[i].first == knots[i - 1].first)
            throw DomainError("friction table has duplicate slip knots");
    }
    return FrictionModel(TabulatedFriction{std::move(knots)});
}

double FrictionModel::operator()(double lambda) const {
    check_slip(lambda);
    return eval_kind(kind_, lambda);
}

std::string FrictionModel::describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BurckhardtParams>) {
                os << "burckhardt(c1=" << m.c1 << ", c2=" << m.c2 << ", c3=" << m.c3 << ")";
            } else if constexpr (std::is_same_v<T, ZeroFriction>) {
                os << "zero";
            } else {
                os << "table(" << m.knots.size() << " knots)";
            }
        },
        kind_);
    return os.str();
}

double eval_mu(const FrictionModel& model, double lambda) { return model(lambda); }

FrictionExtrema mu_extrema(const FrictionModel& model, int grid_points) {
    if (grid_points < 100) throw DomainError("mu_extrema needs at least 100 grid points");
    const auto& kind = model.kind();
    if (std::holds_alternative<ZeroFriction>(kind)) return {};
    FrictionExtrema ex = grid_extrema(kind, grid_points);
    if (const auto* c = std::get_if<BurckhardtParams>(&kind)) {
        refine_burckhardt(*c, grid_points, ex);
    } else if (const auto* t = std::get_if<TabulatedFriction>(&kind)) {
        refine_table(*t, ex);
    }
    return ex;
}

}  // namespace lockup
