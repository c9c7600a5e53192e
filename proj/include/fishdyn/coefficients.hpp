#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fishdyn/errors.hpp"

namespace fishdyn {

/// The eight lift/drag/impact-torque coefficient families. Each family is a
/// scalar curve over the attack angle, tabulated by CFD (or the shipped
/// analytic defaults) and fitted to a polynomial in |alpha|.
enum class CoefficientFamily {
    TailDrag,         // C_Dt
    TailLift,         // C_Lt
    BodyDrag1,        // C_Db1  (x-z plane)
    BodyLift1,        // C_Lb1
    BodyDrag2,        // C_Db2  (x-y plane)
    BodyLift2,        // C_Lb2
    ImpactTorquePitch, // C_MIy
    ImpactTorqueYaw    // C_MIz
};

inline constexpr std::size_t kCoefficientFamilyCount = 8;

/// Canonical short id used in table files, e.g. "C_Dt".
const char* family_id(CoefficientFamily family);

/// Parse "C_Dt" style ids; throws MissingFamilyError for unknown ids.
CoefficientFamily family_from_id(const std::string& id);

/// Drag curves must stay non-negative over the fitted domain.
bool family_is_drag(CoefficientFamily family);

/// Lift and impact-torque curves are fitted through zero at alpha = 0.
bool family_has_zero_intercept(CoefficientFamily family);

struct CoefficientSample {
    double alpha_rad{0.0};
    double value{0.0};
};

/// Polynomial coefficient curve C(|alpha|), valid on [0, alpha_max] and
/// clamped there for larger attack angles. Even-symmetric in alpha by
/// construction (evaluated on the magnitude).
class CoefficientModel {
public:
    CoefficientModel() = default;
    CoefficientModel(CoefficientFamily family, std::vector<double> coefficients,
                     double alpha_max_rad, double fit_rms);

    /// Evaluate at a (signed) attack angle.
    double operator()(double alpha_rad) const;

    CoefficientFamily family() const { return family_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    double alpha_max_rad() const { return alpha_max_rad_; }
    double fit_rms() const { return fit_rms_; }
    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }

private:
    CoefficientFamily family_{CoefficientFamily::TailDrag};
    std::vector<double> coefficients_{0.0}; // ascending powers of |alpha|
    double alpha_max_rad_{0.0};
    double fit_rms_{0.0};
};

/// Least-squares polynomial fit of tabulated samples. The intercept is
/// constrained to zero for lift and impact-torque families. Throws
/// RankDeficientError when the samples cannot determine the polynomial.
CoefficientModel fit_coefficient_model(CoefficientFamily family,
                                       std::span<const CoefficientSample> samples,
                                       int degree);

} // namespace fishdyn
