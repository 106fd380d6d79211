// entanglement.hpp - Wootters concurrence and sudden death / birth events.
#pragma once

#include <string>
#include <vector>

#include "twoatom/dynamics.hpp"

namespace twoatom {

// Generic route for any valid two-qubit density matrix. The square roots of
// the eigenvalues of rho (sy x sy) rho* (sy x sy) are taken as the singular
// values of sqrt(rho) (sy x sy) sqrt(rho)*, which keeps rank-deficient
// states accurate.
double concurrence(const DensityMatrix4& rho);

// Closed form for X-shaped matrices; throws DomainError otherwise.
double concurrence_x_state(const DensityMatrix4& rho);

struct EntanglementEvent {
    enum class Kind { Death, Birth };
    Kind kind;
    double time;
};

const char* to_string(EntanglementEvent::Kind kind);

// Brackets every change of sign of C(t) - threshold on the sampled points and
// refines it by bisection on the closed-form dynamics to 1e-6. Values within
// 1e-12 of the threshold count as "not entangled". Sampling gaps where C
// jumps by more than 0.2 are reported through `warnings`.
std::vector<EntanglementEvent> entanglement_events(const Trajectory& trajectory, double threshold = 0.0,
                                                   std::vector<std::string>* warnings = nullptr);

// First time C reaches the threshold from above, or a negative value if it
// never does within the trajectory.
double first_death_time(const Trajectory& trajectory, double threshold = 0.0);

}  // namespace twoatom
