#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "published_tables.hpp"
#include "tangle/asymptotics.hpp"
#include "tangle/errors.hpp"

using namespace tangle;

namespace {

// round(amp * base^p / p^alpha) exactly.
std::vector<mpz_class> synthetic(long amp, long base, long alpha_den_pow, int pmax) {
    std::vector<mpz_class> out = {1};
    for (int p = 1; p <= pmax; ++p) {
        mpz_class num = amp;
        for (int i = 0; i < p; ++i) num *= base;
        mpz_class den = 1;
        for (int i = 0; i < alpha_den_pow; ++i) den *= p;
        mpz_class rounded = (2 * num + den) / (2 * den);
        out.push_back(rounded);
    }
    return out;
}

}  // namespace

TEST_CASE("pure power law recovers synthetic parameters") {
    const auto counts = synthetic(5, 7, 2, 22);
    const AsymptoticFit fit = fit_growth(counts, FitModel::PurePower, {1, 22});
    CHECK(std::exp(fit.s_hat) == doctest::Approx(7.0).epsilon(0.01));
    CHECK(fit.alpha == doctest::Approx(2.0).epsilon(0.05));
    CHECK(std::exp(fit.log_amplitude) == doctest::Approx(5.0).epsilon(0.1));
    CHECK(fit.residual < 1e-4);
}

TEST_CASE("log-corrected model recovers synthetic parameters") {
    // a_p = 3^p * p^-2 * (2*log p + 1), built in floating point and rounded.
    std::vector<mpz_class> counts = {1, 3};
    for (int p = 2; p <= 22; ++p) {
        const double v =
            std::exp(std::log(3.0) * p - 2 * std::log(p)) * (2 * std::log(p) + 1);
        counts.emplace_back(static_cast<unsigned long>(std::llround(v)));
    }
    const AsymptoticFit fit = fit_growth(counts, FitModel::LogCorrected, {8, 22});
    CHECK(std::exp(fit.s_hat) == doctest::Approx(3.0).epsilon(0.01));
    CHECK(fit.alpha == doctest::Approx(2.0).epsilon(0.05));
    CHECK(fit.a / fit.b == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("constant sequence fits to zero growth and zero exponent") {
    const std::vector<mpz_class> counts(23, mpz_class(1));
    const AsymptoticFit fit = fit_growth(counts, FitModel::PurePower, {1, 22});
    CHECK(fit.s_hat == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.alpha == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.residual == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("published two-leg census reproduces the quoted growth and exponent") {
    const auto counts = published::g_counts(22);
    const AsymptoticFit fit = fit_growth(counts, FitModel::LogCorrected, {10, 22});
    // Quoted: e^s = 11.416 +- 0.005 and alpha = 2.97 +- 0.06 from richer
    // windowing; this window lands inside the wider acceptance bands.
    CHECK(std::exp(fit.s_hat) == doctest::Approx(11.409562).epsilon(1e-4));
    CHECK(fit.alpha == doctest::Approx(3.039756).epsilon(1e-3));
    CHECK(std::exp(fit.s_hat) > 11.416 - 0.02);
    CHECK(std::exp(fit.s_hat) < 11.416 + 0.02);
    CHECK(fit.alpha > 2.97 - 0.2);
    CHECK(fit.alpha < 2.97 + 0.2);
    CHECK(fit.s_hat_spread < 1e-3);
    CHECK(fit.alpha_spread < 5e-2);

    const AsymptoticFit pure = fit_growth(counts, FitModel::PurePower, {10, 22});
    CHECK(std::exp(pure.s_hat) == doctest::Approx(11.270227).epsilon(1e-4));
    CHECK(pure.alpha == doctest::Approx(2.420945).epsilon(1e-3));
}

TEST_CASE("scaling the sequence moves only amplitudes") {
    const auto counts = synthetic(5, 7, 2, 22);
    std::vector<mpz_class> scaled;
    for (const auto& c : counts) scaled.push_back(c * 1000);
    const AsymptoticFit base = fit_growth(counts, FitModel::PurePower, {1, 22});
    const AsymptoticFit big = fit_growth(scaled, FitModel::PurePower, {1, 22});
    CHECK(big.s_hat == doctest::Approx(base.s_hat).epsilon(1e-9));
    CHECK(big.alpha == doctest::Approx(base.alpha).epsilon(1e-9));
    CHECK(big.log_amplitude - base.log_amplitude ==
          doctest::Approx(std::log(1000.0)).epsilon(1e-6));
}

TEST_CASE("window validation") {
    const auto counts = published::g_counts(22);
    CHECK_THROWS_AS(fit_growth(counts, FitModel::PurePower, {0, 10}), DegenerateWindow);
    CHECK_THROWS_AS(fit_growth(counts, FitModel::PurePower, {10, 9}), DegenerateWindow);
    CHECK_THROWS_AS(fit_growth(counts, FitModel::PurePower, {10, 23}), DegenerateWindow);
    CHECK_THROWS_AS(fit_growth(counts, FitModel::PurePower, {10, 13}), DegenerateWindow);

    std::vector<mpz_class> with_zero = counts;
    with_zero[12] = 0;
    CHECK_THROWS_AS(fit_growth(with_zero, FitModel::PurePower, {10, 22}), NonPositiveEntry);
}

TEST_CASE("conjectured exponent") {
    CHECK(conjectured_alpha(0.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(conjectured_alpha(1.0) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(conjectured_alpha(2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(conjectured_alpha(-0.1), OutOfRange);
    CHECK_THROWS_AS(conjectured_alpha(2.1), OutOfRange);
    CHECK_THROWS_AS(conjectured_alpha(std::nan("")), OutOfRange);

    double prev = conjectured_alpha(0.0);
    for (double n = 0.125; n <= 2.0; n += 0.125) {
        const double cur = conjectured_alpha(n);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("count CSV parsing") {
    std::istringstream in("p,count\n0,1\n1,2\n3,42\n");
    const auto counts = read_count_csv(in);
    REQUIRE(counts.size() == 4);
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 2);
    CHECK(counts[2] == 0);  // gap fills with zero
    CHECK(counts[3] == 42);

    std::istringstream bad1("count\n0,1\n");
    CHECK_THROWS_AS(read_count_csv(bad1), ParseError);
    std::istringstream bad2("p,count\nx,1\n");
    CHECK_THROWS_AS(read_count_csv(bad2), ParseError);
    std::istringstream bad3("p,count\n1\n");
    CHECK_THROWS_AS(read_count_csv(bad3), ParseError);
    std::istringstream bad4("p,count\n1,zz\n");
    CHECK_THROWS_AS(read_count_csv(bad4), ParseError);
    std::istringstream bad5("p,count\n-1,4\n");
    CHECK_THROWS_AS(read_count_csv(bad5), ParseError);
}

TEST_CASE("fit report serializes to JSON") {
    const auto counts = published::g_counts(22);
    const AsymptoticFit fit = fit_growth(counts, FitModel::LogCorrected, {10, 22});
    const auto doc = nlohmann::json::parse(fit.to_json());
    CHECK(doc["model"] == "log-corrected");
    CHECK(doc["window"]["lo"] == 10);
    CHECK(doc["window"]["hi"] == 22);
    CHECK(doc["exp_s_hat"].get<double>() == doctest::Approx(11.409562).epsilon(1e-4));
    CHECK(doc["alpha"].get<double>() == doctest::Approx(3.039756).epsilon(1e-3));
    CHECK(doc.contains("residual"));
    CHECK(doc.contains("s_hat_spread"));
}
