/**
 * @file friction.hpp
 * @brief Tire-road friction coefficient models over the slip domain [0, 1].
 *
 * The same FrictionModel type describes both the true road and the
 * adversary's approximation of it; the Zero kind is the "no knowledge"
 * approximation.
 */
#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lockup {

struct BurckhardtParams {
    double c1 = 1.28;
    double c2 = 23.99;
    double c3 = 0.52;

    bool operator==(const BurckhardtParams&) const = default;
};

namespace presets {
inline constexpr BurckhardtParams dry_asphalt{1.28, 23.99, 0.52};
inline constexpr BurckhardtParams wet_asphalt{0.86, 33.82, 0.35};
}  // namespace presets

/// mu(lambda) = c1 (1 - exp(-c2 lambda)) - c3 lambda
template <typename Scalar>
Scalar burckhardt_mu(const BurckhardtParams& c, Scalar lambda) {
    using std::exp;
    return Scalar(c.c1) * (Scalar(1) - exp(-Scalar(c.c2) * lambda)) - Scalar(c.c3) * lambda;
}

/// d mu / d lambda for the Burckhardt form.
template <typename Scalar>
Scalar burckhardt_dmu(const BurckhardtParams& c, Scalar lambda) {
    using std::exp;
    return Scalar(c.c1) * Scalar(c.c2) * exp(-Scalar(c.c2) * lambda) - Scalar(c.c3);
}

struct ZeroFriction {};

/// Piecewise-linear friction curve. Knots are sorted by slip on construction;
/// outside the first/last knot the end value is held.
struct TabulatedFriction {
    std::vector<std::pair<double, double>> knots;
};

struct FrictionExtrema {
    double mu_min = 0.0;
    double mu_max = 0.0;
    double lambda_argmax = 0.0;
};

class FrictionModel {
public:
    using Kind = std::variant<BurckhardtParams, ZeroFriction, TabulatedFriction>;

    /// Default grid used for the cached extrema.
    static constexpr int kExtremaGrid = 10001;

    static FrictionModel burckhardt(const BurckhardtParams& params);
    static FrictionModel zero();
    static FrictionModel tabulated(std::vector<std::pair<double, double>> knots);

    /// Throws DomainError for lambda outside [0, 1].
    double operator()(double lambda) const;

    double mu_max() const noexcept { return extrema_.mu_max; }
    double mu_min() const noexcept { return extrema_.mu_min; }
    double lambda_argmax() const noexcept { return extrema_.lambda_argmax; }
    const FrictionExtrema& extrema() const noexcept { return extrema_; }

    const Kind& kind() const noexcept { return kind_; }
    bool is_zero() const noexcept { return std::holds_alternative<ZeroFriction>(kind_); }
    std::string describe() const;

private:
    explicit FrictionModel(Kind kind);

    Kind kind_;
    FrictionExtrema extrema_;
};

double eval_mu(const FrictionModel& model, double lambda);

/// Extrema of mu over [0, 1]: dense grid scan, refined by bisection on the
/// derivative for Burckhardt models and by knot enumeration for tables.
/// Requires grid_points >= 100.
FrictionExtrema mu_extrema(const FrictionModel& model, int grid_points);

}  // namespace lockup
