#include "fishdyn/coefficients.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace fishdyn {

const char* family_id(CoefficientFamily family) {
    switch (family) {
    case CoefficientFamily::TailDrag: return "C_Dt";
    case CoefficientFamily::TailLift: return "C_Lt";
    case CoefficientFamily::BodyDrag1: return "C_Db1";
    case CoefficientFamily::BodyLift1: return "C_Lb1";
    case CoefficientFamily::BodyDrag2: return "C_Db2";
    case CoefficientFamily::BodyLift2: return "C_Lb2";
    case CoefficientFamily::ImpactTorquePitch: return "C_MIy";
    case CoefficientFamily::ImpactTorqueYaw: return "C_MIz";
    }
    return "?";
}

CoefficientFamily family_from_id(const std::string& id) {
    for (std::size_t i = 0; i < kCoefficientFamilyCount; ++i) {
        const auto family = static_cast<CoefficientFamily>(i);
        if (id == family_id(family)) {
            return family;
        }
    }
    throw MissingFamilyError("unknown coefficient family id '" + id + "'");
}

bool family_is_drag(CoefficientFamily family) {
    return family == CoefficientFamily::TailDrag || family == CoefficientFamily::BodyDrag1 ||
           family == CoefficientFamily::BodyDrag2;
}

bool family_has_zero_intercept(CoefficientFamily family) {
    return !family_is_drag(family);
}

CoefficientModel::CoefficientModel(CoefficientFamily family, std::vector<double> coefficients,
                                   double alpha_max_rad, double fit_rms)
    : family_(family), coefficients_(std::move(coefficients)), alpha_max_rad_(alpha_max_rad),
      fit_rms_(fit_rms) {
    if (coefficients_.empty()) {
        coefficients_ = {0.0};
    }
}

double CoefficientModel::operator()(double alpha_rad) const {
    const double a = std::min(std::abs(alpha_rad), alpha_max_rad_);
    double value = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        value = value * a + *it;
    }
    return value;
}

CoefficientModel fit_coefficient_model(CoefficientFamily family,
                                       std::span<const CoefficientSample> samples,
                                       int degree) {
    if (degree < 0) {
        throw RankDeficientError("negative polynomial degree");
    }
    const bool zero_intercept = family_has_zero_intercept(family);
    const int n_unknowns = zero_intercept ? degree : degree + 1;
    const auto n = static_cast<Eigen::Index>(samples.size());
    if (n < n_unknowns || n == 0) {
        throw RankDeficientError(std::string(family_id(family)) + ": " + std::to_string(n) +
                                 " samples cannot determine a degree-" + std::to_string(degree) +
                                 " fit");
    }

    // Vandermonde design matrix in |alpha|; the constant column is dropped
    // when the intercept is constrained to zero.
    Eigen::MatrixXd design(n, std::max(n_unknowns, 1));
    Eigen::VectorXd rhs(n);
    double alpha_max = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = std::abs(samples[static_cast<std::size_t>(i)].alpha_rad);
        alpha_max = std::max(alpha_max, a);
        double power = zero_intercept ? a : 1.0;
        for (int j = 0; j < n_unknowns; ++j) {
            design(i, j) = power;
            power *= a;
        }
        rhs(i) = samples[static_cast<std::size_t>(i)].value;
    }

    if (zero_intercept && n_unknowns == 0) {
        // Degree-0 fit through zero: the model is identically zero.
        double ss = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            ss += rhs(i) * rhs(i);
        }
        return {family, {0.0}, alpha_max, std::sqrt(ss / static_cast<double>(n))};
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < n_unknowns) {
        throw RankDeficientError(std::string(family_id(family)) +
                                 ": degenerate samples (design matrix rank " +
                                 std::to_string(qr.rank()) + " < " + std::to_string(n_unknowns) +
                                 ")");
    }
    const Eigen::VectorXd solution = qr.solve(rhs);
    const double rms = std::sqrt((design * solution - rhs).squaredNorm() / static_cast<double>(n));

    std::vector<double> coefficients;
    coefficients.reserve(static_cast<std::size_t>(degree) + 1);
    if (zero_intercept) {
        coefficients.push_back(0.0);
    }
    for (int j = 0; j < n_unknowns; ++j) {
        coefficients.push_back(solution(j));
    }
    return {family, std::move(coefficients), alpha_max, rms};
}

} // namespace fishdyn
