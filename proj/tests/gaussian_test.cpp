#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sqbound/channels.hpp"
#include "sqbound/gaussian_core.hpp"

using namespace sqbound;
using namespace sqbound::gaussian_core;

namespace {

Matrix vacuum(int modes) { return Matrix::Identity(2 * modes, 2 * modes); }

// thermal photon distribution summed in the Fock basis, independent of g_entropy
double thermal_entropy_fock(double n, int cutoff) {
    double h = 0.0;
    for (int k = 0; k <= cutoff; ++k) {
        const double p = std::pow(n, k) / std::pow(n + 1.0, k + 1);
        if (p > 0.0)
            h -= p * std::log2(p);
    }
    return h;
}

CovarianceMatrix tmsv(double G) {
    auto S = two_mode_squeezer(G, 0, 1, 2);
    return apply(S, CovarianceMatrix(vacuum(2)));
}

} // namespace

TEST_CASE("g_entropy values") {
    CHECK(g_entropy(1.0) == 0.0);
    CHECK(g_entropy(3.0) == Catch::Approx(2.0).margin(1e-14));
    // g(11) = 6 log2 6 - 5 log2 5, frozen from the independent Fock-sum oracle
    CHECK(g_entropy(11.0) == Catch::Approx(3.900134529890125349371).margin(1e-12));
    CHECK(g_entropy(11.0) == Catch::Approx(thermal_entropy_fock(5.0, 500)).margin(1e-10));
    CHECK(g_entropy(1.0 - 5e-10) == 0.0); // clamp band
    CHECK_THROWS_AS(g_entropy(0.999), std::domain_error);
    CHECK_THROWS_AS(g_entropy(-1.0), std::domain_error);
}

TEST_CASE("g_entropy monotone and asymptote") {
    double prev = g_entropy(1.0);
    for (double x : {1.0001, 1.01, 1.5, 2.0, 5.0, 50.0, 1e3, 1e6}) {
        const double cur = g_entropy(x);
        CHECK(cur > prev);
        prev = cur;
    }
    const double x = 1e6;
    CHECK(std::abs(g_entropy(x) - (std::log2(x / 2.0) + 1.0 / std::log(2.0))) < 1e-6);
}

TEST_CASE("thermal_cov") {
    CHECK(thermal_cov(0.0).entries.isApprox(Matrix::Identity(2, 2)));
    CHECK(thermal_cov(0.5).entries.isApprox(2.0 * Matrix::Identity(2, 2)));
    CHECK(thermal_cov(1.0).entries.isApprox(3.0 * Matrix::Identity(2, 2)));
    CHECK_THROWS_AS(thermal_cov(-0.1), std::domain_error);
}

TEST_CASE("beamsplitter block structure") {
    auto full = beamsplitter(1.0, 0, 1, 2);
    CHECK(full.entries.isApprox(Matrix::Identity(4, 4)));

    auto half = beamsplitter(0.5, 0, 1, 2);
    Matrix expect(4, 4);
    const double r = 1.0 / std::sqrt(2.0);
    expect << r, 0, r, 0,
              0, r, 0, r,
             -r, 0, r, 0,
              0, -r, 0, r;
    CHECK(half.entries.isApprox(expect, 1e-14));

    auto s = beamsplitter(0.3, 0, 1, 2);
    Matrix om = omega(2);
    CHECK((s.entries * om * s.entries.transpose() - om).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(beamsplitter(1.5, 0, 1, 2), std::domain_error);
    CHECK_THROWS_AS(beamsplitter(0.5, 0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(beamsplitter(0.5, 0, 2, 2), std::invalid_argument);
}

TEST_CASE("two_mode_squeezer") {
    CHECK(two_mode_squeezer(1.0, 0, 1, 2).entries.isApprox(Matrix::Identity(4, 4)));

    // G=2 on vacuum: diagonal blocks (2G-1) I = 3 I, off-diagonal 2 sqrt(G(G-1)) sigma_z
    auto out = tmsv(2.0);
    const double c = std::sqrt(8.0);
    Matrix expect(4, 4);
    expect << 3, 0, c, 0,
              0, 3, 0, -c,
              c, 0, 3, 0,
              0, -c, 0, 3;
    CHECK(out.entries.isApprox(expect, 1e-12));

    auto s5 = two_mode_squeezer(5.0, 0, 1, 2);
    Matrix om = omega(2);
    CHECK((s5.entries * om * s5.entries.transpose() - om).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(two_mode_squeezer(0.9, 0, 1, 2), std::domain_error);
}

TEST_CASE("apply basics") {
    CovarianceMatrix vac(vacuum(3));
    SymplecticTransform id(Matrix::Identity(6, 6));
    CHECK(apply(id, vac).entries.isApprox(vac.entries));
    CHECK_THROWS_AS(apply(id, CovarianceMatrix(vacuum(2))), std::invalid_argument);
}

namespace {

Matrix pipeline_output(double n, double g, double t) {
    using namespace sqbound;
    auto ch = channels::from_tau_nu(g * t, 2.0 * g - 1.0 - g * t);
    auto d = channels::squashing_pipeline(ch);
    Matrix in = Matrix::Identity(10, 10);
    in(0, 0) = in(1, 1) = 1.0 + 2.0 * n;
    return apply(d, CovarianceMatrix(in)).entries;
}

// closed-form entries of the 5-mode output covariance
struct entries {
    double a, b, c, d, e, f, g, h;
};

entries closed_entries(double n, double gg, double t) {
    entries r;
    r.a = 2.0 * gg * (1.0 + n * t) - 1.0;
    r.b = n * std::sqrt(2.0 * gg * t * (1.0 - t));
    r.c = (1.0 + n * t) * std::sqrt(2.0 * (gg - 1.0) * gg);
    r.d = 1.0 + n * (1.0 - t);
    r.e = n * (t - 1.0);
    r.f = n * std::sqrt((gg - 1.0) * (1.0 - t) * t);
    r.g = gg + (gg - 1.0) * n * t;
    r.h = -(gg - 1.0) * (1.0 + n * t);
    return r;
}

Matrix expected_output(const entries& v) {
    Matrix sz(2, 2), id2 = Matrix::Identity(2, 2);
    sz << 1, 0, 0, -1;
    Matrix m = Matrix::Zero(10, 10);
    auto put = [&](int bi, int bj, const Matrix& blk) {
        m.block(2 * bi, 2 * bj, 2, 2) = blk;
        m.block(2 * bj, 2 * bi, 2, 2) = blk.transpose();
    };
    put(0, 0, v.a * id2);
    put(0, 1, -v.b * id2);
    put(0, 2, v.b * id2);
    put(0, 3, v.c * sz);
    put(0, 4, -v.c * sz);
    put(1, 1, v.d * id2);
    put(1, 2, v.e * id2);
    put(1, 3, -v.f * sz);
    put(1, 4, v.f * sz);
    put(2, 2, v.d * id2);
    put(2, 3, v.f * sz);
    put(2, 4, -v.f * sz);
    put(3, 3, v.g * id2);
    put(3, 4, v.h * id2);
    put(4, 4, v.g * id2);
    return m;
}

} // namespace

TEST_CASE("pipeline output covariance entries") {
    SECTION("N=0, G=2 gives diag(1,1,2,2) on the two isometry outputs") {
        for (double t : {0.2, 0.5, 0.9}) {
            Matrix out = pipeline_output(0.0, 2.0, t);
            auto sub = reduce(CovarianceMatrix(out), {1, 3}).entries;
            Matrix expect = Matrix::Identity(4, 4);
            expect(2, 2) = expect(3, 3) = 2.0;
            CHECK((sub - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SECTION("full 10x10 matches entry formulas at (N,G,T)=(1,2,0.5)") {
        Matrix out = pipeline_output(1.0, 2.0, 0.5);
        Matrix expect = expected_output(closed_entries(1.0, 2.0, 0.5));
        CHECK((out - expect).cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("reduced E1'E2' block is [[dI,-f sz],[-f sz,gI]]") {
        const double n = 0.7, g = 1.8, t = 0.4;
        Matrix out = pipeline_output(n, g, t);
        auto sub = reduce(CovarianceMatrix(out), {1, 3}).entries;
        auto v = closed_entries(n, g, t);
        Matrix expect(4, 4);
        expect << v.d, 0, -v.f, 0,
                  0, v.d, 0, v.f,
                  -v.f, 0, v.g, 0,
                  0, v.f, 0, v.g;
        CHECK((sub - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("reduce") {
    auto two = tmsv(2.0);
    CHECK(reduce(two, {0, 1}).entries.isApprox(two.entries));
    CHECK(reduce(two, {1}).entries.isApprox(3.0 * Matrix::Identity(2, 2), 1e-12));
    CHECK_THROWS_AS(reduce(two, {}), std::invalid_argument);
    CHECK_THROWS_AS(reduce(two, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(reduce(two, {2}), std::invalid_argument);
}

TEST_CASE("symplectic eigenvalues") {
    auto nus = symplectic_eigenvalues(CovarianceMatrix(vacuum(3)));
    REQUIRE(nus.values.size() == 3);
    for (double v : nus.values)
        CHECK(v == Catch::Approx(1.0).margin(1e-10));

    for (double g : {1.5, 2.0, 7.0}) {
        auto s = symplectic_eigenvalues(tmsv(g));
        REQUIRE(s.values.size() == 2);
        CHECK(s.values[0] == Catch::Approx(1.0).margin(1e-8));
        CHECK(s.values[1] == Catch::Approx(1.0).margin(1e-8));
    }

    Matrix w = Matrix::Identity(4, 4);
    w(2, 2) = w(3, 3) = 4.0;
    auto s = symplectic_eigenvalues(CovarianceMatrix(w));
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == Catch::Approx(4.0).margin(1e-10));
    CHECK(s.values[1] == Catch::Approx(1.0).margin(1e-10));

    // unphysical: below the uncertainty bound
    CHECK_THROWS_AS(symplectic_eigenvalues(CovarianceMatrix(0.5 * vacuum(1).eval())),
                    std::domain_error);
}

TEST_CASE("spectrum invariance and determinant identity") {
    std::mt19937_64 gen(1234);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * ((gen() >> 11) * 0x1.0p-53);
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const int modes = 2 + static_cast<int>(uni(0.0, 2.999)); // 2..4
        Matrix base = Matrix::Identity(2 * modes, 2 * modes);
        for (int m = 0; m < modes; ++m) {
            const double n = uni(0.0, 3.0);
            base(2 * m, 2 * m) = base(2 * m + 1, 2 * m + 1) = 1.0 + 2.0 * n;
        }
        auto random_symplectic = [&]() {
            Matrix s = Matrix::Identity(2 * modes, 2 * modes);
            for (int k = 0; k < 3; ++k) {
                const int i = static_cast<int>(uni(0.0, modes - 1e-9));
                int j = static_cast<int>(uni(0.0, modes - 1e-9));
                if (j == i)
                    j = (i + 1) % modes;
                if (uni(0.0, 1.0) < 0.5)
                    s = compose(beamsplitter(uni(0.05, 0.95), i, j, modes),
                                SymplecticTransform(s)).entries;
                else
                    s = compose(two_mode_squeezer(uni(1.0, 2.5), i, j, modes),
                                SymplecticTransform(s)).entries;
            }
            return SymplecticTransform(s);
        };
        CovarianceMatrix gamma = apply(random_symplectic(), CovarianceMatrix(base));
        auto before = symplectic_eigenvalues(gamma);
        CovarianceMatrix moved = apply(random_symplectic(), gamma);
        auto after = symplectic_eigenvalues(moved);
        REQUIRE(before.values.size() == after.values.size());
        // eigenvalue error grows with the conjugated matrix norm, so scale the tolerance
        const double scale = std::max(1.0, moved.entries.cwiseAbs().maxCoeff());
        for (size_t k = 0; k < before.values.size(); ++k)
            CHECK(std::abs(before.values[k] - after.values[k]) <= 1e-8 * scale);

        double prod = 1.0;
        for (double v : after.values)
            prod *= v * v;
        const double det = moved.entries.determinant();
        CHECK(std::abs(det - prod) <= 1e-8 * scale * std::max(1.0, std::abs(prod)));
    }
}

TEST_CASE("entropies") {
    CHECK(gaussian_entropy(CovarianceMatrix(vacuum(2))) == Catch::Approx(0.0).margin(1e-10));
    CHECK(gaussian_entropy(CovarianceMatrix(thermal_cov(1.0).entries)) ==
          Catch::Approx(2.0).margin(1e-10));
    CHECK(gaussian_entropy(tmsv(3.0)) == Catch::Approx(0.0).margin(1e-7));
}

TEST_CASE("conditional entropy") {
    // TMSV: H(A|B) = H(AB) - H(B) = 0 - g(2G-1); for G=2 that is -g(3) = -2
    CHECK(conditional_entropy(tmsv(2.0), {0}, {1}) == Catch::Approx(-2.0).margin(1e-7));

    // product state: H(B|C) = H(B)
    Matrix prod = Matrix::Identity(4, 4);
    prod(0, 0) = prod(1, 1) = 3.0;
    CovarianceMatrix pc(prod);
    CHECK(conditional_entropy(pc, {0}, {1}) ==
          Catch::Approx(gaussian_entropy(reduce(pc, {0}))).margin(1e-10));

    // N=0 squashing output: H(B|E1'E2') = 0 because {G,1,1} and {G,1} cancel
    Matrix out = pipeline_output(0.0, 2.5, 0.37);
    CHECK(conditional_entropy(CovarianceMatrix(out), {0}, {1, 3}) ==
          Catch::Approx(0.0).margin(1e-8));

    CHECK_THROWS_AS(conditional_entropy(tmsv(2.0), {0}, {0}), std::invalid_argument);
}

TEST_CASE("covariance validation") {
    Matrix bad(3, 3);
    bad.setIdentity();
    CHECK_THROWS_AS(CovarianceMatrix(bad), std::invalid_argument);
    Matrix asym = Matrix::Identity(4, 4);
    asym(0, 1) = 0.5; // not mirrored
    CHECK_THROWS_AS(CovarianceMatrix(asym), std::invalid_argument);
    Matrix notsym = Matrix::Identity(4, 4);
    notsym(0, 2) = 2.0;
    notsym(2, 0) = 2.0 + 1e-6;
    CHECK_THROWS_AS(CovarianceMatrix(notsym), std::invalid_argument);
}
