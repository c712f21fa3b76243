#pragma once
#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace tangle {

enum class FitModel {
    PurePower,     // a_p ~ A * exp(s_hat*p) * p^(-alpha)
    LogCorrected,  // a_p ~ exp(s_hat*p) * p^(-alpha) * (a*log p + b)
};

// Inclusive range of orders p used by a fit.
struct FitWindow {
    int lo = 0;
    int hi = 0;
};

struct AsymptoticFit {
    FitModel model = FitModel::PurePower;
    FitWindow window;
    double s_hat = 0;          // per-vertex entropy, natural-log units
    double alpha = 0;          // power-law exponent
    double a = 0, b = 0;       // log-correction amplitudes (log-corrected only)
    double log_amplitude = 0;  // log A (pure-power only)
    double residual = 0;       // least-squares objective on the window
    // Largest shift of s_hat / alpha when any two window points are dropped
    // and the fit is rerun (0 when too few points remain for a refit).
    double s_hat_spread = 0;
    double alpha_spread = 0;

    std::string to_json() const;
};

// Least-squares growth fit of log(counts[p]) over the window: linear normal
// equations for the pure power law, grid-seeded Gauss-Newton for the
// log-corrected form. counts[p] is the exact count at order p. Throws
// DegenerateWindow (window outside the sequence, below order 1, or fewer than
// 5 points) and NonPositiveEntry (a count in the window is <= 0).
// Deterministic for fixed inputs.
AsymptoticFit fit_growth(const std::vector<mpz_class>& counts, FitModel model, FitWindow window);

// Exponent conjectured from the fully-packed loop model coupled to gravity:
// alpha = 1 + 1/nu where -2*cos(pi*nu) = n, nu in [1/2, 1]. Throws OutOfRange
// for n outside [0, 2].
double conjectured_alpha(double n);

// Reads "p,count" CSV (header required); returns counts indexed by p, with 0
// for orders the input skips.
std::vector<mpz_class> read_count_csv(std::istream& is);

}  // namespace tangle
