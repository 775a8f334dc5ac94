#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "logsphere/geometry.hpp"

namespace logsphere {

enum class InitScheme {
    SpiralPerturbed, // generalized Fibonacci spiral + Gaussian tangent noise
    RandomUniform,   // normalized 3D Gaussians
    Provided,        // start from MinimizeOptions::provided
};

struct MinimizeOptions {
    std::size_t restarts = 20;
    std::size_t max_iters = 50000;
    double grad_tol = 1e-9; // sup over points of the tangent-gradient norm
    std::uint64_t seed = 1;
    InitScheme init = InitScheme::SpiralPerturbed;
    SphereConfiguration provided; // used when init == Provided; restart 0
                                  // takes it verbatim, later restarts are
                                  // perturbed like SpiralPerturbed
    double step0 = 0.0;           // <= 0 selects the default 1/n
    double armijo_c = 1e-4;
    double shrink = 0.5;
};

struct MinimizeResult {
    SphereConfiguration best;
    double energy = 0.0;       // log_energy_sphere(best), recomputed
    double grad_norm = 0.0;    // sup tangent-gradient norm at best
    std::size_t iterations = 0; // iterations of the winning restart
    std::size_t restarts_used = 0;
    bool converged = false;    // winning restart hit grad_tol
    double min_separation = 0.0;
};

/// Multi-start projected Riemannian gradient descent on (S^2)^n for E_log:
/// tangent-projected gradient, Armijo backtracking on the step, retraction
/// by renormalization. Deterministic given (n, opts) at any worker-thread
/// count (each restart is a sequential unit with its own derived RNG
/// stream; reduction over restarts is in index order). Worker threads are
/// capped by the LOGSPHERE_THREADS environment variable.
/// Throws NoProgress if the line search underflows on every restart.
MinimizeResult minimize_log_energy(std::size_t n, const MinimizeOptions& opts);

/// true iff min_separation > c / sqrt(n - 1).
bool separation_check(const MinimizeResult& res, double c = 1.0);

struct EnergyTableEntry {
    std::size_t n = 0;
    double energy = 0.0;
    MinimizeResult result;
    bool ok = false;
    std::string error; // set when ok == false (e.g. NoProgress)
};

/// Minimize for each n in turn; per-n failures are recorded, not thrown.
std::vector<EnergyTableEntry> energy_table(const std::vector<std::size_t>& ns,
                                           const MinimizeOptions& opts);

} // namespace logsphere
