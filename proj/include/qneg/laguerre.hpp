#pragma once

namespace qneg {

/// Laguerre polynomial L_n(x) by the three-term upward recurrence
/// (k + 1) L_{k+1} = (2k + 1 - x) L_k - k L_{k-1}.
double laguerre(int n, double x);

}  // namespace qneg
