#include "tangle/asymptotics.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tangle/errors.hpp"

namespace tangle {
namespace {

// log of an arbitrarily large positive integer without overflowing double.
double log_mpz(const mpz_class& z) {
    signed long exp2;
    const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

// Gauss-Jordan solve with partial pivoting; returns false when singular.
template <int N>
bool solve_linear(double M[N][N], double v[N], double out[N]) {
    for (int c = 0; c < N; ++c) {
        int piv = c;
        for (int r = c + 1; r < N; ++r)
            if (std::fabs(M[r][c]) > std::fabs(M[piv][c])) piv = r;
        if (std::fabs(M[piv][c]) < 1e-300) return false;
        for (int cc = 0; cc < N; ++cc) std::swap(M[c][cc], M[piv][cc]);
        std::swap(v[c], v[piv]);
        for (int r = 0; r < N; ++r) {
            if (r == c || M[r][c] == 0.0) continue;
            const double f = M[r][c] / M[c][c];
            for (int cc = 0; cc < N; ++cc) M[r][cc] -= f * M[c][cc];
            v[r] -= f * v[c];
        }
    }
    for (int i = 0; i < N; ++i) out[i] = v[i] / M[i][i];
    return true;
}

struct Points {
    std::vector<double> p;   // order
    std::vector<double> y;   // log count
};

// log y = s*p - alpha*log(p) + c, linear least squares.
void fit_pure(const Points& pts, double& s, double& alpha, double& c, double& sse) {
    double M[3][3] = {};
    double v[3] = {};
    for (size_t i = 0; i < pts.p.size(); ++i) {
        const double row[3] = {pts.p[i], -std::log(pts.p[i]), 1.0};
        for (int r = 0; r < 3; ++r) {
            v[r] += row[r] * pts.y[i];
            for (int cc = 0; cc < 3; ++cc) M[r][cc] += row[r] * row[cc];
        }
    }
    double q[3];
    if (!solve_linear<3>(M, v, q)) throw DegenerateWindow("singular pure-power fit");
    s = q[0];
    alpha = q[1];
    c = q[2];
    sse = 0;
    for (size_t i = 0; i < pts.p.size(); ++i) {
        const double r = s * pts.p[i] - alpha * std::log(pts.p[i]) + c - pts.y[i];
        sse += r * r;
    }
}

double sse_logcorr(const Points& pts, const double q[4]) {
    double tot = 0;
    for (size_t i = 0; i < pts.p.size(); ++i) {
        const double lp = std::log(pts.p[i]);
        const double m = q[2] * lp + q[3];
        if (m <= 0) return std::numeric_limits<double>::infinity();
        const double r = q[0] * pts.p[i] - q[1] * lp + std::log(m) - pts.y[i];
        tot += r * r;
    }
    return tot;
}

// log y = s*p - alpha*log(p) + log(a*log(p) + b), Gauss-Newton with step
// halving from the given seed.
void fit_logcorr_from(const Points& pts, double q[4], double& sse) {
    sse = sse_logcorr(pts, q);
    for (int iter = 0; iter < 200; ++iter) {
        double JtJ[4][4] = {};
        double g[4] = {};
        for (size_t i = 0; i < pts.p.size(); ++i) {
            const double lp = std::log(pts.p[i]);
            const double m = q[2] * lp + q[3];
            const double r = q[0] * pts.p[i] - q[1] * lp + std::log(m) - pts.y[i];
            const double row[4] = {pts.p[i], -lp, lp / m, 1.0 / m};
            for (int a = 0; a < 4; ++a) {
                g[a] -= row[a] * r;
                for (int b = 0; b < 4; ++b) JtJ[a][b] += row[a] * row[b];
            }
        }
        for (int a = 0; a < 4; ++a) JtJ[a][a] *= 1.0 + 1e-12;
        double d[4];
        if (!solve_linear<4>(JtJ, g, d)) return;
        double step = 1.0;
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            const double trial[4] = {q[0] + step * d[0], q[1] + step * d[1], q[2] + step * d[2],
                                     q[3] + step * d[3]};
            const double s2 = sse_logcorr(pts, trial);
            if (s2 < sse) {
                for (int a = 0; a < 4; ++a) q[a] = trial[a];
                sse = s2;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        double biggest = 0;
        for (int a = 0; a < 4; ++a) biggest = std::max(biggest, std::fabs(step * d[a]));
        if (!improved || biggest < 1e-14) return;
    }
}

void fit_logcorr_grid(const Points& pts, double q[4], double& sse) {
    const size_t nn = pts.p.size();
    const double s0 = pts.y[nn - 1] - pts.y[nn - 2];  // top-of-window ratio
    const double alphas[] = {1.5, 2.0, 2.5, 3.0, 3.5};
    const double amps[] = {0.1, 0.5, 1.0, 2.0};
    sse = std::numeric_limits<double>::infinity();
    for (double alpha0 : alphas)
        for (double a0 : amps)
            for (double b0 : amps) {
                double trial[4] = {s0 + alpha0 / static_cast<double>(nn), alpha0, a0, b0};
                double trial_sse;
                fit_logcorr_from(pts, trial, trial_sse);
                if (trial_sse < sse) {
                    sse = trial_sse;
                    for (int a = 0; a < 4; ++a) q[a] = trial[a];
                }
            }
}

// Central estimate for one point set; params[0..1] always (s, alpha).
void fit_points(const Points& pts, FitModel model, double params[4], double& sse) {
    if (model == FitModel::PurePower) {
        params[3] = 0;
        fit_pure(pts, params[0], params[1], params[2], sse);
    } else {
        fit_logcorr_grid(pts, params, sse);
    }
}

}  // namespace

AsymptoticFit fit_growth(const std::vector<mpz_class>& counts, FitModel model,
                         FitWindow window) {
    if (window.lo < 1 || window.hi < window.lo ||
        window.hi >= static_cast<int>(counts.size()))
        throw DegenerateWindow("window [" + std::to_string(window.lo) + "," +
                               std::to_string(window.hi) + "] outside orders 1.." +
                               std::to_string(static_cast<int>(counts.size()) - 1));
    if (window.hi - window.lo + 1 < 5)
        throw DegenerateWindow("need at least 5 points to fit");
    Points pts;
    for (int p = window.lo; p <= window.hi; ++p) {
        if (counts[p] <= 0)
            throw NonPositiveEntry("count at order " + std::to_string(p) + " is " +
                                   counts[p].get_str());
        pts.p.push_back(p);
        pts.y.push_back(log_mpz(counts[p]));
    }

    AsymptoticFit fit;
    fit.model = model;
    fit.window = window;
    double params[4] = {};
    fit_points(pts, model, params, fit.residual);
    fit.s_hat = params[0];
    fit.alpha = params[1];
    if (model == FitModel::PurePower)
        fit.log_amplitude = params[2];
    else {
        fit.a = params[2];
        fit.b = params[3];
    }

    // Leave-two-out spread, skipped when a refit would drop below 5 points.
    const size_t nn = pts.p.size();
    if (nn >= 7) {
        for (size_t i = 0; i < nn; ++i)
            for (size_t j = i + 1; j < nn; ++j) {
                Points sub;
                for (size_t k = 0; k < nn; ++k)
                    if (k != i && k != j) {
                        sub.p.push_back(pts.p[k]);
                        sub.y.push_back(pts.y[k]);
                    }
                double sub_params[4] = {};
                double sub_sse;
                fit_points(sub, model, sub_params, sub_sse);
                fit.s_hat_spread =
                    std::max(fit.s_hat_spread, std::fabs(sub_params[0] - fit.s_hat));
                fit.alpha_spread =
                    std::max(fit.alpha_spread, std::fabs(sub_params[1] - fit.alpha));
            }
    }
    return fit;
}

double conjectured_alpha(double n) {
    if (!(n >= 0.0 && n <= 2.0))
        throw OutOfRange("loop fugacity " + std::to_string(n) + " outside [0,2]");
    const double nu = std::acos(-n / 2.0) / std::acos(-1.0);
    return 1.0 + 1.0 / nu;
}

std::string AsymptoticFit::to_json() const {
    nlohmann::json doc;
    doc["model"] = model == FitModel::PurePower ? "pure-power" : "log-corrected";
    doc["window"] = {{"lo", window.lo}, {"hi", window.hi}};
    doc["s_hat"] = s_hat;
    doc["exp_s_hat"] = std::exp(s_hat);
    doc["alpha"] = alpha;
    if (model == FitModel::PurePower)
        doc["log_amplitude"] = log_amplitude;
    else {
        doc["a"] = a;
        doc["b"] = b;
    }
    doc["residual"] = residual;
    doc["s_hat_spread"] = s_hat_spread;
    doc["alpha_spread"] = alpha_spread;
    return doc.dump(2);
}

std::vector<mpz_class> read_count_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "p,count")
        throw ParseError("count CSV must start with header p,count");
    std::vector<mpz_class> counts;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("bad count row: " + line);
        int p;
        try {
            p = std::stoi(line.substr(0, comma));
        } catch (const std::exception&) {
            throw ParseError("bad order in row: " + line);
        }
        if (p < 0) throw ParseError("negative order in row: " + line);
        mpz_class c;
        if (c.set_str(line.substr(comma + 1), 10) != 0)
            throw ParseError("bad count in row: " + line);
        if (p >= static_cast<int>(counts.size())) counts.resize(p + 1, mpz_class(0));
        counts[p] = c;
    }
    return counts;
}

}  // namespace tangle
