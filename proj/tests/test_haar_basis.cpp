#include "fixtures.hpp"
#include "oracles.hpp"

#include "treepara/error.hpp"
#include "treepara/haar_basis.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace treepara;

namespace {

double max_gram_error(const TreeBasis& b) {
    const auto& t = b.tree();
    std::vector<std::vector<double>> dense;
    for (std::size_t i = 0; i < b.size(); ++i) dense.push_back(b.dense(i));
    double worst = 0.0;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        for (std::size_t j = 0; j < dense.size(); ++j) {
            const double g = oracle::weighted_dot(t, dense[i], dense[j]);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("node wavelet amplitudes") {
    CHECK(helmert_amplitudes({1.0}).empty());

    const auto two = helmert_amplitudes({1.0, 1.0});
    REQUIRE(two.size() == 1);
    CHECK(two[0][0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(two[0][1] == doctest::Approx(-1.0 / std::sqrt(2.0)));

    const auto t3 = fixture::tree_from_partitions(3, {{{0, 1, 2}}, {{0}, {1}, {2}}},
                                                  MeasureMode::counting);
    const auto w = build_node_wavelets(t3, 0, 0);
    REQUIRE(w.size() == 2);
    const auto gs = oracle::gram_schmidt_node(t3, 0, 0);
    std::vector<std::vector<double>> dense;
    for (const auto& fn : w) {
        std::vector<double> v(3, 0.0);
        for (std::size_t i = 0; i < fn.support.size(); ++i) v[fn.support[i]] = fn.values[i];
        dense.push_back(v);
    }
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            CHECK(oracle::weighted_dot(t3, dense[a], dense[b]) ==
                  doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
        }
        for (std::size_t i = 0; i < 3; ++i) CHECK(dense[a][i] == doctest::Approx(gs[a][i]));
    }
    CHECK(w[0].index == 1);
    CHECK(w[1].index == 2);
}

TEST_CASE("node wavelets agree with Gram-Schmidt on unequal children") {
    for (auto mode : {MeasureMode::normalized, MeasureMode::counting}) {
        const auto t = fixture::random_cluster_tree(48, 21, 4).with_measure(mode);
        for (std::size_t l = 0; l < t.depth(); ++l) {
            for (std::size_t k = 0; k < t.node_count(l); ++k) {
                const auto w = build_node_wavelets(t, l, k);
                const auto gs = oracle::gram_schmidt_node(t, l, k);
                REQUIRE(w.size() == t.child_count(l, k) - 1);
                for (std::size_t j = 0; j < w.size(); ++j) {
                    std::vector<double> v(t.size(), 0.0);
                    for (std::size_t i = 0; i < w[j].support.size(); ++i) {
                        v[w[j].support[i]] = w[j].values[i];
                    }
                    for (std::size_t i = 0; i < t.size(); ++i) {
                        REQUIRE(v[i] == doctest::Approx(gs[j][i]).epsilon(1e-12));
                    }
                }
            }
        }
    }
}

TEST_CASE("four point basis under counting measure") {
    const TreeBasis b(fixture::dyadic(4, MeasureMode::counting));
    REQUIRE(b.size() == 4);
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<std::vector<double>> expected = {
        {0.5, 0.5, 0.5, 0.5}, {0.5, 0.5, -0.5, -0.5}, {h, -h, 0, 0}, {0, 0, h, -h}};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto v = b.dense(i);
        for (std::size_t e = 0; e < 4; ++e) CHECK(v[e] == doctest::Approx(expected[i][e]));
    }
    CHECK(b.scaling().kind == BasisKind::scaling);
    CHECK(b.index_of(1, 1, 1) == 3);

    SUBCASE("golden coefficients") {
        const std::vector<double> f = {1, 3, 2, 6};
        const auto c = b.analyze(f);
        // dense inner products against the expected functions
        for (std::size_t i = 0; i < 4; ++i) {
            double dot = 0.0;
            for (std::size_t e = 0; e < 4; ++e) dot += f[e] * expected[i][e];
            CHECK(c[i] == doctest::Approx(dot).epsilon(1e-14));
        }
        CHECK(c[1] == doctest::Approx(-2.0).epsilon(1e-14));
        CHECK(c[2] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
        CHECK(c[3] == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-14));
    }
}

TEST_CASE("single point basis") {
    const TreeBasis b(fixture::dyadic(1));
    REQUIRE(b.size() == 1);
    CHECK(b.dense(0)[0] == doctest::Approx(1.0));
    const auto c = b.analyze(std::vector<double>{2.5});
    CHECK(b.synthesize(c)[0] == doctest::Approx(2.5));
}

TEST_CASE("orthonormality, locality and zero mean") {
    std::vector<PartitionTree> trees = {fixture::dyadic(64),
                                        fixture::dyadic(32, MeasureMode::counting)};
    for (std::uint64_t s = 0; s < 3; ++s) trees.push_back(fixture::random_cluster_tree(64, 100 + s));
    for (const auto& t : trees) {
        const TreeBasis b(t);
        REQUIRE(b.size() == t.size());
        CHECK(max_gram_error(b) < 1e-10);
        for (std::size_t i = 1; i < b.size(); ++i) {
            const auto& fn = b.function(i);
            const auto& home = t.node(fn.level, fn.node).elements;
            double mean = 0.0;
            for (std::size_t e = 0; e < fn.support.size(); ++e) {
                REQUIRE(oracle::contains(home, fn.support[e]));
                mean += t.element_weight() * fn.values[e];
            }
            CHECK(std::abs(mean) < 1e-12);
            // constant on each child of the home node
            for (auto c : t.node(fn.level, fn.node).children) {
                const auto dense = b.dense(i);
                const auto& kids = t.node(fn.level + 1, c).elements;
                for (auto id : kids) CHECK(dense[id] == dense[kids.front()]);
            }
        }
    }
}

TEST_CASE("analysis and synthesis") {
    const auto t = fixture::random_cluster_tree(40, 7);
    const TreeBasis b(t);

    SUBCASE("matches dense inner products") {
        const auto f = oracle::random_signal(40, 1);
        const auto c = b.analyze(f);
        for (std::size_t i = 0; i < b.size(); ++i) {
            CHECK(c[i] == doctest::Approx(oracle::weighted_dot(t, f, b.dense(i))).epsilon(1e-12));
        }
    }
    SUBCASE("constant signal") {
        const auto c = b.analyze(std::vector<double>(40, 3.0));
        for (std::size_t i = 1; i < c.size(); ++i) CHECK(std::abs(c[i]) < 1e-14);
        CHECK(c[0] != doctest::Approx(0.0));
    }
    SUBCASE("round trip and Parseval") {
        const TreeBasis big(fixture::dyadic(256));
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto f = oracle::random_signal(256, seed);
            const auto c = big.analyze(f);
            CHECK(max_abs_diff(big.synthesize(c), f) < 1e-10);
            double energy = 0.0;
            for (double v : c) energy += v * v;
            const double norm2 = oracle::weighted_dot(big.tree(), f, f);
            CHECK(std::abs(energy - norm2) <= 1e-10 * norm2);
        }
    }
    SUBCASE("size mismatch") {
        CHECK_THROWS_AS(b.analyze(std::vector<double>(39, 0.0)), Error);
        CHECK_THROWS_AS(b.synthesize(std::vector<double>(41, 0.0)), Error);
    }
}

TEST_CASE("tensor basis") {
    SUBCASE("one by one") {
        const auto tb = build_tensor_basis(TreeBasis(fixture::dyadic(1)), TreeBasis(fixture::dyadic(1)));
        CHECK(tb.size() == 1);
        CHECK(tb.kind(0, 0) == TensorKind::scaling_scaling);
    }
    SUBCASE("kind counts on 4x4") {
        const auto tb = build_tensor_basis(TreeBasis(fixture::dyadic(4)), TreeBasis(fixture::dyadic(4)));
        std::map<TensorKind, int> count;
        for (std::size_t a = 0; a < 4; ++a) {
            for (std::size_t b = 0; b < 4; ++b) ++count[tb.kind(a, b)];
        }
        CHECK(count[TensorKind::scaling_scaling] == 1);
        CHECK(count[TensorKind::wavelet_scaling] == 3);
        CHECK(count[TensorKind::scaling_wavelet] == 3);
        CHECK(count[TensorKind::wavelet_wavelet] == 9);
    }
    SUBCASE("8x4 Gram matrix and analysis") {
        const TreeBasis bx(fixture::dyadic(8));
        const TreeBasis by(fixture::random_cluster_tree(4, 3));
        const auto tb = build_tensor_basis(bx, by);
        const double w = bx.weight() * by.weight();
        std::vector<Signal2D> elems;
        for (std::size_t a = 0; a < 8; ++a) {
            for (std::size_t b = 0; b < 4; ++b) elems.push_back(tb.element_values(a, b));
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            for (std::size_t j = 0; j < elems.size(); ++j) {
                double g = 0.0;
                for (std::size_t e = 0; e < elems[i].size(); ++e) {
                    g += w * elems[i].data()[e] * elems[j].data()[e];
                }
                worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
            }
        }
        CHECK(worst < 1e-10);

        const auto f = oracle::random_matrix(8, 4, 5);
        const auto c = tb.analyze(f);
        for (std::size_t a = 0; a < 8; ++a) {
            for (std::size_t b = 0; b < 4; ++b) {
                const auto& e = elems[a * 4 + b];
                double dot = 0.0;
                for (std::size_t k = 0; k < e.size(); ++k) dot += w * f.data()[k] * e.data()[k];
                CHECK(c(a, b) == doctest::Approx(dot).epsilon(1e-12));
            }
        }
        CHECK(max_abs_diff(tb.synthesize(c), f) < 1e-10);
        double energy = 0.0;
        double norm2 = 0.0;
        for (double v : c.data()) energy += v * v;
        for (double v : f.data()) norm2 += w * v * v;
        CHECK(std::abs(energy - norm2) <= 1e-10 * norm2);
    }
}

TEST_CASE("exports") {
    const TreeBasis b(fixture::dyadic(4, MeasureMode::counting));
    const auto doc = basis_to_json(b);
    REQUIRE(doc.size() == 4);
    CHECK(doc[0]["kind"] == "scaling");
    CHECK(doc[2]["l"] == 1);
    CHECK(doc[2]["support"] == nlohmann::json::array({0, 1}));

    std::ostringstream csv;
    write_coefficients_csv(csv, b, b.analyze(std::vector<double>{1, 3, 2, 6}));
    const auto text = csv.str();
    CHECK(text.rfind("l,k,j,value\n", 0) == 0);
    CHECK(text.find("0,0,1,-2\n") != std::string::npos);
    CHECK(text.find("1,1,1,-2.8284271247461") != std::string::npos);
}
