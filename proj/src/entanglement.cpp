#include "twoatom/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "twoatom/errors.hpp"

namespace twoatom {

namespace {

constexpr double kGuard = 1e-12;
constexpr double kTimeTol = 1e-6;

// sy x sy in the {|11>, |10>, |01>, |00>} basis is the real anti-diagonal
// matrix (-1, 1, 1, -1).
Matrix4c spin_flip() {
    Matrix4c y = Matrix4c::Zero();
    y(0, 3) = -1.0;
    y(1, 2) = 1.0;
    y(2, 1) = 1.0;
    y(3, 0) = -1.0;
    return y;
}

}  // namespace

double concurrence(const DensityMatrix4& rho) {
    rho.require_physical();
    const Matrix4c h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> eig(h);
    Eigen::Vector4d mu = eig.eigenvalues();
    if (mu.minCoeff() < -1e-10) {
        throw DomainError("concurrence: density matrix is not positive semidefinite");
    }
    mu = mu.cwiseMax(0.0);
    const Matrix4c root = eig.eigenvectors() * mu.cwiseSqrt().cast<cplx>().asDiagonal() *
                          eig.eigenvectors().adjoint();
    const Matrix4c m = root * spin_flip() * root.conjugate();
    Eigen::JacobiSVD<Matrix4c> svd(m);
    const Eigen::Vector4d s = svd.singularValues();  // descending
    const double c = s(0) - s(1) - s(2) - s(3);
    return std::clamp(c, 0.0, 1.0);
}

double concurrence_x_state(const DensityMatrix4& rho) {
    if (rho.off_x_magnitude() > 1e-12) {
        throw DomainError("concurrence_x_state: matrix is not X-shaped");
    }
    rho.require_physical();
    const double r11 = std::max(rho(1, 1).real(), 0.0);
    const double r22 = std::max(rho(2, 2).real(), 0.0);
    const double r33 = std::max(rho(3, 3).real(), 0.0);
    const double r44 = std::max(rho(4, 4).real(), 0.0);
    const double c1 = std::abs(rho(2, 3)) - std::sqrt(r11 * r44);
    const double c2 = std::abs(rho(1, 4)) - std::sqrt(r22 * r33);
    return std::min(1.0, 2.0 * std::max({0.0, c1, c2}));
}

const char* to_string(EntanglementEvent::Kind kind) {
    return kind == EntanglementEvent::Kind::Death ? "death" : "birth";
}

std::vector<EntanglementEvent> entanglement_events(const Trajectory& trajectory, double threshold,
                                                   std::vector<std::string>* warnings) {
    std::vector<EntanglementEvent> events;
    const auto& pts = trajectory.points;
    if (pts.size() < 2) {
        return events;
    }
    const auto entangled = [&](double c) { return c - threshold > kGuard; };
    const auto at = [&](double t) {
        return concurrence(density_matrix(trajectory.state, trajectory.coeffs, t));
    };

    double prev_c = concurrence(pts.front().rho);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double c = concurrence(pts[i].rho);
        if (warnings && std::abs(c - prev_c) > 0.2) {
            warnings->push_back("concurrence jumps by " + std::to_string(std::abs(c - prev_c)) + " between t=" +
                                std::to_string(pts[i - 1].t) + " and t=" + std::to_string(pts[i].t) +
                                "; trajectory may be undersampled");
        }
        const bool before = entangled(prev_c);
        if (before != entangled(c)) {
            double lo = pts[i - 1].t;
            double hi = pts[i].t;
            while (hi - lo > kTimeTol) {
                const double mid = 0.5 * (lo + hi);
                (entangled(at(mid)) == before ? lo : hi) = mid;
            }
            events.push_back({before ? EntanglementEvent::Kind::Death : EntanglementEvent::Kind::Birth,
                              0.5 * (lo + hi)});
        }
        prev_c = c;
    }
    return events;
}

double first_death_time(const Trajectory& trajectory, double threshold) {
    for (const auto& e : entanglement_events(trajectory, threshold)) {
        if (e.kind == EntanglementEvent::Kind::Death) {
            return e.time;
        }
    }
    return -1.0;
}

}  // namespace twoatom
