#pragma once

namespace negpt::baselines {

/// Largest fixed point of the interdependent-percolation branch equation
///   P = p [1 - (1 - P)^{k-1}]^M
/// on M-layer fully interdependent Bethe lattices; 0 below the threshold.
double interdependent_branch(int k, int M, double p);

struct InterdependentCritical {
  double p_th = 0.0;
  double p_plus = 0.0;  // jump of the branch value (0 for M = 1)
};

InterdependentCritical interdependent_critical(int k, int M);

/// Sponge-crossing concurrence of the DV (ConPT) Bethe response; exhibits
/// a continuous transition at c_th and saturates at c_sat < 1.
double conpt_sponge_bethe(int k, double c);

}  // namespace negpt::baselines
