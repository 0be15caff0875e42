#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "screens/wavemodes.hpp"

using namespace screens;

TEST_CASE("axial decay basic values") {
    // single nonzero component
    CHECK(axial_decay(ImaginaryFrequency(1.0), TransverseMomentum(0, 0), 0, 1.0) == doctest::Approx(1.0));
    // 3-4-5 triangle
    CHECK(axial_decay(ImaginaryFrequency(3.0), TransverseMomentum(0, 4.0), 0, 1.0) ==
          doctest::Approx(5.0));
    // 2 pi p / period = 1
    CHECK(axial_decay(ImaginaryFrequency(0.0), TransverseMomentum(0, 0), 1, 2.0 * M_PI) ==
          doctest::Approx(1.0));
}

TEST_CASE("axial decay domain errors") {
    CHECK_THROWS_AS(axial_decay(ImaginaryFrequency(1.0), TransverseMomentum(0, 0), 0, -1.0),
                    config_error);
    CHECK_THROWS_AS(ImaginaryFrequency(-0.5), config_error);
    CHECK_THROWS_AS(ImaginaryFrequency(std::nan("")), config_error);
}

TEST_CASE("axial decay monotonicity") {
    const double base = axial_decay(ImaginaryFrequency(1.0), TransverseMomentum(0.5, 0.3), 2, 1.0);
    CHECK(axial_decay(ImaginaryFrequency(1.5), TransverseMomentum(0.5, 0.3), 2, 1.0) > base);
    CHECK(axial_decay(ImaginaryFrequency(1.0), TransverseMomentum(0.5, 0.8), 2, 1.0) > base);
    CHECK(axial_decay(ImaginaryFrequency(1.0), TransverseMomentum(0.9, 0.3), 2, 1.0) > base);
}

TEST_CASE("order basis q values and indexing") {
    OrderBasis basis(2.0, 3, ImaginaryFrequency(0.7), TransverseMomentum(0.4, 0.2));
    CHECK(basis.dimension() == 7);
    for (int p = -3; p <= 3; ++p) {
        CHECK(basis.q(p) > 0.0);
        CHECK(basis.q(p) ==
              doctest::Approx(std::sqrt(0.7 * 0.7 + 0.2 * 0.2 + std::pow(0.4 + M_PI * p, 2))));
        CHECK(basis.order_of(basis.index_of(p)) == p);
    }
    CHECK_THROWS_AS(OrderBasis(2.0, 3, ImaginaryFrequency(0.7), TransverseMomentum(3.2, 0.0)),
                    config_error); // kx outside the Brillouin zone
}

TEST_CASE("translation diagonal entries") {
    OrderBasis basis(1.0, 4, ImaginaryFrequency(1.0), TransverseMomentum(0, 0));
    SUBCASE("d = 0 is the identity") {
        TranslationDiagonal u = translation_diagonal(basis, 0.0);
        for (int i = 0; i < basis.dimension(); ++i) CHECK(u.entries[i] == doctest::Approx(1.0));
    }
    SUBCASE("e^{-ln 2} = 1/2 at q = 1") {
        // the p = 0 order has q = kappa = 1
        TranslationDiagonal u = translation_diagonal(basis, std::log(2.0));
        CHECK(u.entries[basis.index_of(0)] == doctest::Approx(0.5));
    }
    SUBCASE("entries strictly decreasing in |p|, all in (0,1) for d > 0") {
        TranslationDiagonal u = translation_diagonal(basis, 0.35);
        for (int p = 0; p < 4; ++p) {
            CHECK(u.entries[basis.index_of(p + 1)] < u.entries[basis.index_of(p)]);
            CHECK(u.entries[basis.index_of(p)] > 0.0);
            CHECK(u.entries[basis.index_of(p)] < 1.0);
        }
    }
    SUBCASE("negative separation rejected") {
        CHECK_THROWS_AS(translation_diagonal(basis, -0.1), config_error);
    }
}

TEST_CASE("mirror and empty amplitudes") {
    OrderBasis basis(1.0, 2, ImaginaryFrequency(0.9), TransverseMomentum(0.1, 0.0));
    const int n = basis.dimension();
    auto [rd, td] = mirror_amplitudes(Channel::Dirichlet, basis);
    CHECK((rd.matrix + MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((td.matrix + MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
    auto [rn, tn] = mirror_amplitudes(Channel::Neumann, basis);
    CHECK((rn.matrix - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((tn.matrix + MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
    auto [re, te] = mirror_amplitudes(Channel::EPol, basis);
    CHECK((re.matrix + MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
    auto [rm, tm] = mirror_amplitudes(Channel::MPol, basis);
    CHECK((rm.matrix - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);

    auto [r0, t0] = empty_amplitudes(Channel::Dirichlet, basis);
    CHECK(r0.matrix.cwiseAbs().maxCoeff() == 0.0);
    CHECK(t0.matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("offset phase conjugation") {
    OrderBasis basis(1.0, 2, ImaginaryFrequency(0.9), TransverseMomentum(0.3, 0.0));
    const int n = basis.dimension();
    MatrixXcd m = MatrixXcd::Random(n, n);
    // full-period shift is the identity operation
    MatrixXcd shifted = apply_offset_phase(m, basis, 1.0);
    CHECK((shifted - m).cwiseAbs().maxCoeff() < 1e-14);
    // half-period shift flips the sign of odd |p - p'| entries
    MatrixXcd half = apply_offset_phase(m, basis, 0.5);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
            CHECK(std::abs(half(i, j) - sign * m(i, j)) < 1e-14);
        }
    // identity is preserved under any shift
    MatrixXcd eye = apply_offset_phase(MatrixXcd::Identity(n, n), basis, 0.321);
    CHECK((eye - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("channel names round trip") {
    for (Channel c : {Channel::Dirichlet, Channel::Neumann, Channel::EPol, Channel::MPol})
        CHECK(channel_from_name(channel_name(c)) == c);
    CHECK_THROWS_AS(channel_from_name("bogus"), config_error);
}
