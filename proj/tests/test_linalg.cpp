#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gridcert/linalg.hpp"

using namespace gridcert;

namespace {

SymMatrix random_symmetric(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, u(rng));
    return m;
}

}  // namespace

TEST_CASE("cholesky_psd identity", "[linalg]") {
    auto r = cholesky_psd(SymMatrix::identity(3), 1e-12);
    REQUIRE(r.psd);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(r.factor(i, j) == ((i == j) ? 1.0 : 0.0));
}

TEST_CASE("cholesky_psd boundary pivot", "[linalg]") {
    auto r = cholesky_psd(SymMatrix::from_diag({1.0, 0.0, 2.0}), 1e-12);
    REQUIRE(r.psd);
    CHECK(r.factor(1, 1) == 0.0);
    CHECK(r.factor(2, 2) == Catch::Approx(std::sqrt(2.0)));
}

TEST_CASE("cholesky_psd negative pivot", "[linalg]") {
    auto r = cholesky_psd(SymMatrix::from_diag({1.0, -1e-3}), 1e-12);
    REQUIRE_FALSE(r.psd);
    CHECK(r.failed_index == 1);
}

TEST_CASE("cholesky_psd agrees with eigenvalues", "[linalg]") {
    const double tol = 1e-12;
    for (unsigned seed = 0; seed < 20; ++seed) {
        auto raw = random_symmetric(8, 100 + seed);
        // Shift into (or near) the PSD cone half the time.
        auto eig = eig_sym(raw);
        SymMatrix m = raw;
        if (seed % 2 == 0) {
            for (std::size_t i = 0; i < 8; ++i) m.add(i, i, -eig.values.front() + 1e-3);
        }
        auto r = cholesky_psd(m, tol);
        auto w = eig_sym(m);
        const double thr = tol * std::max(m.max_diag(), 0.0);
        if (r.psd) {
            // every eigenvalue must be essentially nonnegative
            CHECK(w.values.front() >= -1e-9 * std::abs(w.values.back()));
        } else {
            CHECK(w.values.front() < thr);
        }
    }
}

TEST_CASE("eig_sym diagonal and 2x2", "[linalg]") {
    auto r = eig_sym(SymMatrix::from_diag({3.0, 1.0, 2.0}));
    REQUIRE(r.values.size() == 3);
    CHECK(r.values[0] == Catch::Approx(1.0));
    CHECK(r.values[1] == Catch::Approx(2.0));
    CHECK(r.values[2] == Catch::Approx(3.0));

    SymMatrix s(2);
    s.set(0, 1, 1.0);
    auto r2 = eig_sym(s);
    CHECK(r2.values[0] == Catch::Approx(-1.0));
    CHECK(r2.values[1] == Catch::Approx(1.0));
}

TEST_CASE("eig_sym reconstruction oracle", "[linalg]") {
    auto m = random_symmetric(20, 42);
    auto r = eig_sym(m);
    const double scale = norm_fro(m);

    // V W V^T must reproduce m.
    Matrix vw(20, 20);
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < 20; ++j) vw(i, j) = r.vectors(i, j) * r.values[j];
    double recon_err = 0.0;
    double orth_err = 0.0;
    for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = 0; j < 20; ++j) {
            double s = 0.0;
            double q = 0.0;
            for (std::size_t k = 0; k < 20; ++k) {
                s += vw(i, k) * r.vectors(j, k);
                q += r.vectors(k, i) * r.vectors(k, j);
            }
            recon_err += (s - m(i, j)) * (s - m(i, j));
            const double id = (i == j) ? 1.0 : 0.0;
            orth_err = std::max(orth_err, std::abs(q - id));
        }
    }
    CHECK(std::sqrt(recon_err) <= 1e-9 * scale);
    CHECK(orth_err <= 1e-9);
}

TEST_CASE("eig_sym eigenvalue sum equals trace", "[linalg]") {
    for (unsigned seed = 0; seed < 50; ++seed) {
        auto m = random_symmetric(5 + seed % 14, 7000 + seed);
        auto r = eig_sym(m);
        double sum = 0.0;
        for (double w : r.values) sum += w;
        CHECK(std::abs(sum - m.trace()) <= 1e-9 * std::max(1.0, norm_fro(m)));
    }
}

TEST_CASE("solve_linear basics", "[linalg]") {
    Matrix id = Matrix::identity(2);
    auto x = solve_linear(id, {1.0, 2.0});
    CHECK(x[0] == 1.0);
    CHECK(x[1] == 2.0);

    Matrix d(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 4.0;
    auto y = solve_linear(d, {2.0, 8.0});
    CHECK(y[0] == Catch::Approx(1.0));
    CHECK(y[1] == Catch::Approx(2.0));
}

TEST_CASE("solve_linear Hilbert oracle", "[linalg]") {
    // b is constructed from the known solution x = ones, so the expected
    // value is independent of the solver.
    const std::size_t n = 6;
    Matrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 1.0 / double(i + j + 1);
    Vector b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i] += h(i, j);
    auto x = solve_linear(h, b);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("solve_linear reports singularity", "[linalg]") {
    Matrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 0.5;
    a(1, 1) = 1.0;  // rank one
    REQUIRE_THROWS_AS(solve_linear(a, {1.0, 1.0}), SingularMatrixError);
}

TEST_CASE("solve_linear residuals on random well-conditioned systems", "[linalg]") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + std::size_t(rng() % 15);
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
            a(i, i) += double(n);  // diagonal dominance keeps conditioning mild
        }
        Vector b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = u(rng);
        auto x = solve_linear(a, b);
        Vector r = a * x;
        double norm_a = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) norm_a = std::max(norm_a, std::abs(a(i, j)));
        for (std::size_t i = 0; i < n; ++i) r[i] -= b[i];
        REQUIRE(norm_inf(r) <= 1e-10 * (norm_a * norm_inf(x) + norm_inf(b)));
    }
}

TEST_CASE("inverse_from_cholesky round trip", "[linalg]") {
    auto raw = random_symmetric(12, 9);
    SymMatrix m = raw;
    auto eig = eig_sym(raw);
    for (std::size_t i = 0; i < 12; ++i) m.add(i, i, -eig.values.front() + 1.0);
    Matrix L;
    REQUIRE(cholesky_pd(m, L));
    Matrix inv = inverse_from_cholesky(L);
    Matrix prod = inv * m.to_matrix();
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j)
            CHECK(prod(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-9));
}
