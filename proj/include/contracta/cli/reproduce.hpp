#pragma once

#include <string>
#include <vector>

#include "contracta/cli/report.hpp"
#include "contracta/onestep.hpp"

namespace contracta::cli {

/// x+ = 1.1 x + u with X = [-10, 10]^n, U = [-1, 1]^n.
SystemModel unstable_box_system(std::size_t n);

/// Quarter-turn rotation with B = e2, X = [-5, 5]^2, U = [-1, 1].
SystemModel rotation_system();

/// x+ = 0.8 x with a dead input, X = [-5, 5], U = [-1, 1].
SystemModel uncontrolled_decay_system();

/// Closed-form half-widths of Q_k(T) for the rotation system starting from the
/// box [-t1, t1] x [-t2, t2]; valid while t1 <= 5 and t2 <= 4 at every step.
std::vector<std::pair<double, double>> rotation_box_widths(double lambda, double t1, double t2, std::size_t k);

/// d(Q_k(C), Q_k(D)) for the rotation system with C = [-1,1]^2, D = [-2,2] x [-1,1].
double rotation_distance_closed_form(double lambda, std::size_t k);

const std::vector<std::string>& reproduction_names();

/// Runs one named reproduction. Throws InvalidArgument for an unknown name.
Report reproduce(const std::string& name);

}  // namespace contracta::cli
