#include <cmath>
#include <sstream>

#include "corpus.hpp"
#include "doctest.h"
#include "normlab/profiles.hpp"

using namespace normlab;

TEST_CASE("make_iid fills constants and validates") {
    const auto p = make_iid(2, 2, 1.0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(p(i, j) == 1.0);

    const auto z = make_iid(1, 3, 0.0);
    CHECK(z.rows() == 1);
    CHECK(z.cols() == 3);
    CHECK(z.is_zero());

    const auto h = make_iid(3, 2, 0.5);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(h(i, j) == 0.5);

    CHECK_THROWS(make_iid(0, 2, 1.0));
    CHECK_THROWS(make_iid(2, 0, 1.0));
    CHECK_THROWS(make_iid(2, 2, -1.0));
    CHECK_THROWS(make_iid(2, 2, std::numeric_limits<double>::infinity()));
    CHECK_THROWS(make_iid(2, 2, std::nan("")));
}

TEST_CASE("make_tensor is the outer product x_j * y_i") {
    const std::vector<double> x{1, 2}, y{3, 1};
    const auto p = make_tensor(x, y);
    CHECK(p(0, 0) == 3.0);
    CHECK(p(0, 1) == 6.0);
    CHECK(p(1, 0) == 1.0);
    CHECK(p(1, 1) == 2.0);

    const std::vector<double> one{1};
    const auto single = make_tensor(one, one);
    CHECK(single.rows() == 1);
    CHECK(single(0, 0) == 1.0);

    const std::vector<double> x2{0, 1}, y2{1, 1};
    const auto zcol = make_tensor(x2, y2);
    CHECK(zcol(0, 0) == 0.0);
    CHECK(zcol(0, 1) == 1.0);
    CHECK(zcol(1, 0) == 0.0);
    CHECK(zcol(1, 1) == 1.0);

    CHECK_THROWS(make_tensor(std::vector<double>{}, y));
    CHECK_THROWS(make_tensor(std::vector<double>{-1.0}, y));
}

TEST_CASE("make_diagonal") {
    const std::vector<double> d{1, 2};
    const auto p = make_diagonal(d);
    CHECK(p(0, 0) == 1.0);
    CHECK(p(0, 1) == 0.0);
    CHECK(p(1, 0) == 0.0);
    CHECK(p(1, 1) == 2.0);

    const auto z = make_diagonal(std::vector<double>{0.0});
    CHECK(z.rows() == 1);
    CHECK(z(0, 0) == 0.0);

    const auto c = make_diagonal(std::vector<double>{5, 5, 5});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(c(i, j) == (i == j ? 5.0 : 0.0));

    CHECK_THROWS(make_diagonal(std::vector<double>{}));
}

TEST_CASE("row and column norm maxima") {
    const VarianceProfile p(2, 2, {3, 4, 0, 1});
    CHECK(row_norm_max(p, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(row_norm_max(p, kInf) == 4.0);
    CHECK(col_norm_max(p, 2.0) == doctest::Approx(std::sqrt(17.0)).epsilon(1e-14));
    CHECK(col_norm_max(p, 1.0) == doctest::Approx(5.0).epsilon(1e-14));

    const auto z = make_iid(3, 3, 0.0);
    for (double r : {1.0, 2.0, 7.5, kInf}) CHECK(row_norm_max(z, r) == 0.0);

    const VarianceProfile s(1, 1, {7});
    CHECK(col_norm_max(s, 3.0) == doctest::Approx(7.0).epsilon(1e-14));

    CHECK_THROWS(row_norm_max(p, 0.5));
}

TEST_CASE("bvh mixed norm") {
    const VarianceProfile p(2, 2, {3, 4, 0, 1});
    CHECK(bvh_mixed_norm(p) == doctest::Approx(5.0).epsilon(1e-14));

    const VarianceProfile eye(2, 2, {1, 0, 0, 1});
    CHECK(bvh_mixed_norm(eye) == doctest::Approx(1.0).epsilon(1e-14));

    const VarianceProfile row(1, 3, {1, 1, 1});
    CHECK(bvh_mixed_norm(row) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("row_norm_max decreases in r; bvh is transpose symmetric") {
    const double rs[] = {1.0, 1.5, 2.0, 3.0, 8.0, kInf};
    for (const auto& p : testcorpus::profile_corpus(25, 12)) {
        for (std::size_t k = 0; k + 1 < std::size(rs); ++k) {
            CHECK(row_norm_max(p, rs[k]) >= row_norm_max(p, rs[k + 1]) - 1e-12);
            CHECK(col_norm_max(p, rs[k]) >= col_norm_max(p, rs[k + 1]) - 1e-12);
        }
        CHECK(bvh_mixed_norm(p) == doctest::Approx(bvh_mixed_norm(p.transposed())).epsilon(1e-14));
    }
}

TEST_CASE("tensor row norms separate as y_i * ||x||_r") {
    const std::vector<double> x{0.3, 1.7, 0.0, 2.2};
    const std::vector<double> y{1.0, 0.25, 3.0};
    const auto p = make_tensor(x, y);
    for (double r : {1.0, 2.0, 3.5, kInf}) {
        double ymax = 0.0;
        for (double v : y) ymax = std::max(ymax, v);
        CHECK(row_norm_max(p, r) ==
              doctest::Approx(ymax * lr_norm(x, r)).epsilon(1e-13));
    }
}

TEST_CASE("constructors are pure: repeated construction is bit identical") {
    const auto a = make_tensor(std::vector<double>{0.1, 0.7}, std::vector<double>{1.3, 2.0});
    const auto b = make_tensor(std::vector<double>{0.1, 0.7}, std::vector<double>{1.3, 2.0});
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) CHECK(a(i, j) == b(i, j));
}

TEST_CASE("NormPair conjugates and validation") {
    const NormPair pair(1.5, 3.0);
    CHECK(pair.p() == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(1.0 / pair.p() + 1.0 / pair.p_star() == doctest::Approx(1.0).epsilon(1e-15));

    const NormPair edge(1.0, kInf);
    CHECK(std::isinf(edge.p()));
    CHECK(!edge.p_finite());
    CHECK(!edge.q_finite());

    CHECK(NormPair(2.0, 2.0).p() == 2.0);
    CHECK_THROWS(NormPair(0.9, 2.0));
    CHECK_THROWS(NormPair(2.1, 2.0));
    CHECK_THROWS(NormPair(1.5, 1.9));
    CHECK_THROWS(NormPair(std::nan(""), 2.0));
}

TEST_CASE("profile file round trip and parse errors") {
    const auto p = make_tensor(std::vector<double>{0.25, 1.5, 2.0}, std::vector<double>{1.0, 0.5});
    std::ostringstream os;
    write_profile(os, p);
    std::istringstream is(os.str());
    const auto back = read_profile(is);
    REQUIRE(back.rows() == p.rows());
    REQUIRE(back.cols() == p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) CHECK(back(i, j) == p(i, j));

    auto expect_error = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            read_profile(in, "input");
            FAIL("expected parse error for: " << text);
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("2 2\n1 2\n3 -4\n", "input:3");   // negative with line number
    expect_error("2 2\n1 2\n3 -4\n", "negative");
    expect_error("1 2\n1 nan\n", "NaN");
    expect_error("1 2\n1\n", "expected 2 entries");
    expect_error("1 2\n1 2 3\n", "trailing");
    expect_error("0 2\n", "positive");
    expect_error("junk\n", "header");

    // realizations reuse the format but may be negative
    std::istringstream neg("1 2\n-1 2\n");
    const Matrix m = read_matrix(neg);
    CHECK(m(0, 0) == -1.0);
}
