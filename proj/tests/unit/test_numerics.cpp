#include <doctest.h>

#include <algorithm>
#include <random>

#include "platoon_lab/error.hpp"
#include "platoon_lab/numerics.hpp"
#include "platoon_lab/tridiagonal.hpp"
#include "unit/support.hpp"

using namespace platoon_lab;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> c(degree + 1);
    for (auto& x : c) x = u(rng);
    if (std::abs(c.back()) < 0.1) c.back() = 1.0;
    return Polynomial(c);
}

bool has_root(const std::vector<Complex>& roots, Complex r, double tol) {
    return std::any_of(roots.begin(), roots.end(), [&](Complex x) { return std::abs(x - r) < tol; });
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("normalization") {
    CHECK(Polynomial{1.0, 2.0, 0.0, 0.0}.coeffs() == std::vector<double>{1.0, 2.0});
    CHECK(Polynomial{0.0, 0.0}.is_zero());
    CHECK(Polynomial{}.is_zero());
    CHECK(Polynomial{0.0}.degree() == 0);
    CHECK(Polynomial{1.0, 1e-20}.degree() == 0);
    CHECK(Polynomial{0.0, 0.0, 1.0}.zero_root_multiplicity() == 2);
    CHECK_THROWS_AS(Polynomial({1.0, std::nan("")}), Error);
}

TEST_CASE("poly_eval") {
    CHECK(poly_eval(Polynomial{1.0}, {3.0, 4.0}) == Complex(1.0, 0.0));
    CHECK(std::abs(poly_eval(Polynomial{0.0, 0.0, 1.0}, {0.0, 1.0}) - Complex(-1.0, 0.0)) == 0.0);
    CHECK(poly_eval(Polynomial{3.0, 43.0, 110.0}, 0.0) == Complex(3.0, 0.0));
}

TEST_CASE("poly_mul") {
    CHECK(poly_mul(Polynomial{1.0}, Polynomial{0.0, 1.0}) == Polynomial{0.0, 1.0});
    CHECK(poly_mul(Polynomial{1.0, 1.0}, Polynomial{1.0, 1.0}) == Polynomial{1.0, 2.0, 1.0});
    CHECK(poly_mul(Polynomial{0.0, 0.0, 1.0}, Polynomial{1.0, 2.9, 1.0}) == Polynomial{0.0, 0.0, 1.0, 2.9, 1.0});
    CHECK(poly_mul(Polynomial{0.0}, Polynomial{1.0, 2.0}).is_zero());
}

TEST_CASE("poly_add_scaled") {
    CHECK(poly_add_scaled(Polynomial{1.0}, Polynomial{1.0}, 0.0) == Polynomial{1.0});
    CHECK(poly_add_scaled(Polynomial{0.0, 1.0}, Polynomial{1.0}, 2.0) == Polynomial{2.0, 1.0});
    CHECK(poly_add_scaled(Polynomial{1.0, 2.0}, Polynomial{0.0, 0.0, 1.0}, 0.5) == Polynomial{1.0, 2.0, 0.5});
    CHECK(poly_add_scaled(Polynomial{1.0, 1.0}, Polynomial{0.0, 1.0}, -1.0) == Polynomial{1.0});
}

TEST_CASE("poly_roots") {
    auto r = poly_roots(Polynomial{-1.0, 0.0, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(has_root(r, -1.0, 1e-12));
    CHECK(has_root(r, 1.0, 1e-12));

    r = poly_roots(Polynomial{1.0, 2.0, 1.0});
    REQUIRE(r.size() == 2);
    for (Complex x : r) CHECK(std::abs(x + 1.0) < 1e-7);

    r = poly_roots(Polynomial{1.0, 2.9, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0].imag()) < 1e-12);
    CHECK(std::abs(r[1].imag()) < 1e-12);
    CHECK((r[0] * r[1]).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((r[0] + r[1]).real() == doctest::Approx(-2.9).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(poly_roots(Polynomial{2.0}), "no roots defined", Error);
    CHECK_THROWS_WITH_AS(poly_roots(Polynomial{0.0}), "no roots defined", Error);
}

TEST_CASE("rtf_eval") {
    CHECK(std::abs(rtf_eval(testing::double_integrator(), {0.0, 1.0}) - Complex(-1.0)) < 1e-15);
    CHECK(rtf_eval({Polynomial{0.0, 1.0}, Polynomial{0.0, 1.0}}, 2.0) == Complex(1.0));
    CHECK(rtf_eval(testing::lead_lag(), 0.0) == Complex(3.0));
    CHECK_THROWS_WITH_AS(rtf_eval(testing::double_integrator(), 0.0), "pole at evaluation point", Error);
    CHECK_THROWS_AS(RationalTF(Polynomial{1.0}, Polynomial{0.0}), Error);
}

TEST_CASE("no cancellation in series connection") {
    const RationalTF a{Polynomial{1.0, 1.0}, Polynomial{0.0, 1.0}};
    const RationalTF b{Polynomial{1.0}, Polynomial{1.0, 1.0}};
    const RationalTF m = rtf_mul(a, b);
    CHECK(m.num == Polynomial{1.0, 1.0});
    CHECK(m.den == Polynomial{0.0, 1.0, 1.0});
}

TEST_CASE("property: evaluation is multiplicative") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> deg(0, 6);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Polynomial a = random_poly(rng, deg(rng));
        const Polynomial b = random_poly(rng, deg(rng));
        const Complex s(u(rng), u(rng));
        const Complex expect = poly_eval(a, s) * poly_eval(b, s);
        const Complex got = poly_eval(poly_mul(a, b), s);
        CHECK(std::abs(got - expect) <= 1e-10 * std::max(std::abs(expect), 1.0));
    }
}

TEST_CASE("property: roots re-expand to the coefficients") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int trial = 0; trial < 300; ++trial) {
        const Polynomial p = random_poly(rng, deg(rng));
        const auto roots = poly_roots(p);
        REQUIRE(static_cast<int>(roots.size()) == p.degree());
        double norm = 0.0;
        for (double c : p.coeffs()) norm = std::max(norm, std::abs(c));
        for (Complex r : roots) CHECK(std::abs(poly_eval(p, r)) <= 1e-8 * norm * std::max(1.0, std::pow(std::abs(r), p.degree())));
        const Polynomial q = poly_from_roots(roots, p.leading());
        REQUIRE(q.degree() == p.degree());
        for (int k = 0; k <= p.degree(); ++k) CHECK(std::abs(q[k] - p[k]) <= 1e-6 * norm);
    }
}

TEST_CASE("property: series connection evaluates as a product") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> w(0.01, 100.0);
    const RationalTF c = testing::lead_lag();
    const RationalTF g = testing::double_integrator();
    const RationalTF m = rtf_mul(c, g);
    for (int i = 0; i < 200; ++i) {
        const Complex s(0.0, w(rng));
        CHECK(testing::rel_diff(rtf_eval(m, s), rtf_eval(c, s) * rtf_eval(g, s)) <= 1e-12);
    }
}

TEST_CASE("symmetric tridiagonal QL against the dense solver") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int n : {1, 2, 3, 7, 30}) {
        std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
        for (auto& x : d) x = u(rng);
        for (auto& x : e) x = u(rng);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) a(i, i) = d[i];
        for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = e[i];
        Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
        const auto got = symmetric_tridiagonal_eigenvalues(d, e);
        REQUIRE(static_cast<int>(got.size()) == n);
        for (int i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(ref(i)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("sign-symmetric tridiagonal rejects indefinite products") {
    const std::vector<double> d{1.0, 1.0}, sub{-1.0}, sup{1.0};
    CHECK_THROWS_AS(sign_symmetric_tridiagonal_eigenvalues(d, sub, sup), Error);
    const std::vector<double> bad{1.0, std::numeric_limits<double>::infinity()};
    const std::vector<double> one{-1.0};
    CHECK_THROWS_AS(sign_symmetric_tridiagonal_eigenvalues(bad, one, one), Error);
}

}
