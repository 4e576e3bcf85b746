#include <cmath>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "normlab/pqnorm.hpp"

using namespace normlab;

namespace {

void check_witness(const Matrix& M, const NormPair& pair, const NormResult& r) {
    if (r.value == 0.0) return;
    CHECK(lr_norm(r.maximizer, pair.p_star()) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> z(M.rows());
    M.multiply(r.maximizer, z);
    const double attained = lr_norm(z, pair.q());
    CHECK(attained <= r.value + 1e-12 * (1.0 + r.value));
    CHECK(r.value <= attained + 1e-9 * (1.0 + r.value));
}

}  // namespace

TEST_CASE("op_norm routes to the exact forms") {
    const Matrix d(2, 2, {3, 0, 0, 4});
    const auto r1 = op_norm(d, NormPair(1.0, 2.0));
    CHECK(r1.method == NormMethod::exact_p1);
    CHECK(r1.value == doctest::Approx(4.0).epsilon(1e-14));

    const auto r2 = op_norm(d, NormPair(2.0, kInf));
    CHECK(r2.method == NormMethod::exact_qinf);
    CHECK(r2.value == doctest::Approx(4.0).epsilon(1e-14));

    const Matrix h(2, 2, {1, 1, 1, -1});
    const auto r3 = op_norm(h, NormPair(2.0, 2.0));
    CHECK(r3.method == NormMethod::exact_22);
    CHECK(r3.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

    const auto r4 = op_norm(h, NormPair(1.5, 3.0));
    CHECK(r4.method == NormMethod::power_iteration);

    const Matrix bad(1, 2, {1.0, std::nan("")});
    CHECK_THROWS(op_norm(bad, NormPair(2.0, 2.0)));
}

TEST_CASE("exact_p1: best column, ties to the lowest index") {
    const Matrix M(2, 2, {1, 2, 2, 1});
    const auto r = exact_p1(M, 2.0);
    CHECK(r.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(r.maximizer == std::vector<double>{1.0, 0.0});
    CHECK(r.converged);

    const Matrix z(2, 2, {0, 0, 0, 0});
    CHECK(exact_p1(z, 2.0).value == 0.0);

    const Matrix r3 = testcorpus::random_matrix(3, 3, 99, 0);
    const NormPair pair(1.0, 3.0);
    const auto exact = exact_p1(r3, 3.0);
    const auto oracle = grid_oracle(r3, pair, 2000);
    CHECK(exact.value == doctest::Approx(oracle.value).epsilon(1e-3));
    CHECK(exact.value >= oracle.value - 1e-9);  // e_j is on the oracle's sphere
    check_witness(r3, pair, exact);
}

TEST_CASE("exact_qinf: best row norming vector") {
    const Matrix M(1, 2, {3, 4});
    const auto r = exact_qinf(M, 2.0);
    CHECK(r.value == doctest::Approx(5.0).epsilon(1e-14));
    check_witness(M, NormPair(2.0, kInf), r);

    const Matrix eye(2, 2, {1, 0, 0, 1});
    const auto rinf = exact_qinf(eye, 1.0);
    CHECK(rinf.value == doctest::Approx(1.0).epsilon(1e-14));

    // cross-method agreement: iterate at a colossal finite q
    const Matrix r24 = testcorpus::random_matrix(2, 4, 77, 1);
    const auto exact = exact_qinf(r24, 1.5);
    const auto iter = power_iteration(r24, NormPair(1.5, 1e12));
    CHECK(iter.value == doctest::Approx(exact.value).epsilon(1e-9));
    check_witness(r24, NormPair(1.5, kInf), exact);
}

TEST_CASE("exact_22: spectral norm") {
    const Matrix eye(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    CHECK(exact_22(eye).value == doctest::Approx(1.0).epsilon(1e-11));

    const Matrix perm(2, 2, {0, 1, 1, 0});
    CHECK(exact_22(perm).value == doctest::Approx(1.0).epsilon(1e-11));

    const Matrix diag(2, 2, {2, 0, 0, 1});
    const auto r = exact_22(diag);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(r.converged);
    check_witness(diag, NormPair(2.0, 2.0), r);
}

TEST_CASE("power iteration: separable diagonal case") {
    const Matrix diag(2, 2, {1, 0, 0, 2});
    const auto r = power_iteration(diag, NormPair(1.5, 3.0));
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r.converged);
    CHECK(std::abs(r.maximizer[1]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("power iteration matches the grid oracle on 2 columns") {
    const Matrix h(2, 2, {1, 1, 1, -1});
    const NormPair pair(1.5, 3.0);
    const auto iter = power_iteration(h, pair);
    const auto oracle = grid_oracle(h, pair, 4000);
    CHECK(iter.value == doctest::Approx(oracle.value).epsilon(1e-4));

    for (std::uint64_t idx = 0; idx < 8; ++idx) {
        const Matrix M = testcorpus::random_matrix(3, 2, 1234, idx);
        const NormPair p(1.2, 4.0);
        const auto it = power_iteration(M, p);
        const auto orc = grid_oracle(M, p, 4000);
        CHECK(it.value >= orc.value - 5e-3);
        CHECK(it.value <= orc.value + 5e-3 * (1.0 + orc.value));
        check_witness(M, p, it);
    }
}

TEST_CASE("power iteration dominates every e_j start and ascends monotonically") {
    for (std::uint64_t idx = 0; idx < 6; ++idx) {
        const Matrix M = testcorpus::random_matrix(5, 4, 555, idx);
        const NormPair pair(1.5, 3.0);
        std::vector<double> trace;
        PowerOpts opts;
        opts.trace = &trace;
        const auto r = power_iteration(M, pair, opts);
        double best_col = 0.0;
        for (std::size_t j = 0; j < M.cols(); ++j)
            best_col = std::max(best_col, lr_norm(M.column(j), pair.q()));
        CHECK(r.value >= best_col - 1e-12 * (1.0 + best_col));
        REQUIRE(!trace.empty());
        for (std::size_t k = 0; k + 1 < trace.size(); ++k)
            CHECK(trace[k + 1] >= trace[k] * (1.0 - 1e-12));
    }
}

TEST_CASE("power iteration edge cases and invariances") {
    const Matrix z(3, 3, std::vector<double>(9, 0.0));
    const auto rz = power_iteration(z, NormPair(1.5, 3.0));
    CHECK(rz.value == 0.0);
    CHECK(rz.converged);

    const Matrix M = testcorpus::random_matrix(4, 4, 321, 0);
    const NormPair pair(1.25, 4.0);
    const auto base = power_iteration(M, pair);

    // scaling
    std::vector<double> scaled(M.entries().begin(), M.entries().end());
    for (double& v : scaled) v *= 10.0;
    const auto rs = power_iteration(Matrix(4, 4, scaled), pair);
    CHECK(rs.value == doctest::Approx(10.0 * base.value).epsilon(1e-12));

    // column sign flip and column swap
    std::vector<double> flipped(M.entries().begin(), M.entries().end());
    for (std::size_t i = 0; i < 4; ++i) flipped[i * 4 + 2] = -flipped[i * 4 + 2];
    const auto rf = power_iteration(Matrix(4, 4, flipped), pair);
    CHECK(rf.value == doctest::Approx(base.value).epsilon(1e-9));

    std::vector<double> swapped(M.entries().begin(), M.entries().end());
    for (std::size_t i = 0; i < 4; ++i) std::swap(swapped[i * 4], swapped[i * 4 + 3]);
    const auto rw = power_iteration(Matrix(4, 4, swapped), pair);
    CHECK(rw.value == doctest::Approx(base.value).epsilon(1e-9));

    // (2,2) overlap with the spectral route
    const auto p22 = power_iteration(M, NormPair(2.0, 2.0));
    const auto s22 = exact_22(M);
    CHECK(p22.value == doctest::Approx(s22.value).epsilon(1e-8));
}

TEST_CASE("op_norm decreases in q at fixed p_star") {
    for (std::uint64_t idx = 0; idx < 5; ++idx) {
        const Matrix M = testcorpus::random_matrix(4, 2, 808, idx);
        double prev = kInf;
        for (double q : {2.0, 3.0, 4.0, 8.0, 16.0}) {
            const double v = grid_oracle(M, NormPair(1.5, q), 2000).value;
            CHECK(v <= prev + 1e-9);
            prev = v;
        }
    }
}

TEST_CASE("grid oracle basics") {
    const Matrix col(3, 1, {1, 2, 2});
    const auto r1 = grid_oracle(col, NormPair(1.5, 2.0), 100);
    CHECK(r1.value == doctest::Approx(3.0).epsilon(1e-14));

    const Matrix eye(2, 2, {1, 0, 0, 1});
    const auto r2 = grid_oracle(eye, NormPair(2.0, 2.0), 1000);
    CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-5));

    const Matrix wide(2, 4, std::vector<double>(8, 1.0));
    CHECK_THROWS(grid_oracle(wide, NormPair(2.0, 2.0), 1000));
    CHECK_THROWS(grid_oracle(eye, NormPair(2.0, 2.0), 50));

    // serial and parallel scans agree bit for bit
    const Matrix M = testcorpus::random_matrix(3, 3, 606, 2);
    const NormPair pair(1.5, 4.0);
    const auto rp = grid_oracle(M, pair, 300, true);
    const auto rs = grid_oracle(M, pair, 300, false);
    CHECK(rp.value == rs.value);
    CHECK(rp.maximizer == rs.maximizer);
}
