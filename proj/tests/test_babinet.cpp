#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "screens/babinet.hpp"
#include "screens/grating_solver.hpp"

using namespace screens;

namespace {

OrderBasis make_basis() {
    return OrderBasis(1.0, 3, ImaginaryFrequency(0.9), TransverseMomentum(0.2, 0.1));
}

} // namespace

TEST_CASE("scalar complement of limiting screens") {
    OrderBasis basis = make_basis();
    const int n = basis.dimension();
    auto [rd_mirror, td_mirror] = mirror_amplitudes(Channel::Dirichlet, basis);

    // full mirror (Dirichlet) -> empty screen (Neumann)
    ReflectionBlock rn_empty = complement_reflection_scalar(rd_mirror);
    CHECK(rn_empty.channel_in == Channel::Neumann);
    CHECK(rn_empty.matrix.cwiseAbs().maxCoeff() == 0.0);

    // full mirror (Neumann) -> empty screen (Dirichlet)
    auto [rn_mirror, tn_mirror] = mirror_amplitudes(Channel::Neumann, basis);
    ReflectionBlock rd_empty = complement_reflection_scalar(rn_mirror);
    CHECK(rd_empty.channel_in == Channel::Dirichlet);
    CHECK(rd_empty.matrix.cwiseAbs().maxCoeff() == 0.0);

    // transmission: mirror -> zero, empty -> -I
    TransmissionBlock tn_empty = complement_transmission_scalar(td_mirror);
    CHECK(tn_empty.matrix.cwiseAbs().maxCoeff() == 0.0);
    auto [re, t_empty] = empty_amplitudes(Channel::Dirichlet, basis);
    TransmissionBlock t_full = complement_transmission_scalar(t_empty);
    CHECK((t_full.matrix + MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scalar complement is an involution and flips channels") {
    OrderBasis basis = make_basis();
    const int n = basis.dimension();
    MatrixXcd random = MatrixXcd::Random(n, n);
    ReflectionBlock r(Channel::Dirichlet, Channel::Dirichlet, basis, random);
    ReflectionBlock twice = complement_reflection_scalar(complement_reflection_scalar(r));
    CHECK(twice.channel_in == Channel::Dirichlet);
    CHECK((twice.matrix - random).cwiseAbs().maxCoeff() < 1e-15);

    TransmissionBlock t(Channel::Neumann, Channel::Neumann, basis, random);
    TransmissionBlock t2 = complement_transmission_scalar(complement_transmission_scalar(t));
    CHECK(t2.channel_in == Channel::Neumann);
    CHECK((t2.matrix - random).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("em complement maps mirror to empty and back, entry exact") {
    OrderBasis basis = make_basis();
    EmBlockSet mirror = em_mirror_set(basis);
    EmBlockSet empty = complement_em(mirror);
    CHECK(empty.r_ee.matrix.cwiseAbs().maxCoeff() == 0.0);
    CHECK(empty.r_mm.matrix.cwiseAbs().maxCoeff() == 0.0);
    CHECK(empty.t_ee.matrix.cwiseAbs().maxCoeff() == 0.0);
    CHECK(empty.t_mm.matrix.cwiseAbs().maxCoeff() == 0.0);

    EmBlockSet mirror_again = complement_em(em_empty_set(basis));
    const int n = basis.dimension();
    CHECK((mirror_again.r_ee.matrix + MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((mirror_again.r_mm.matrix - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((mirror_again.t_ee.matrix + MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("em complement is an involution") {
    OrderBasis basis = make_basis();
    const int n = basis.dimension();
    EmBlockSet b{
        ReflectionBlock(Channel::EPol, Channel::EPol, basis, MatrixXcd::Random(n, n)),
        ReflectionBlock(Channel::EPol, Channel::MPol, basis, MatrixXcd::Random(n, n)),
        ReflectionBlock(Channel::MPol, Channel::EPol, basis, MatrixXcd::Random(n, n)),
        ReflectionBlock(Channel::MPol, Channel::MPol, basis, MatrixXcd::Random(n, n)),
        TransmissionBlock(Channel::EPol, Channel::EPol, basis, MatrixXcd::Random(n, n)),
        TransmissionBlock(Channel::EPol, Channel::MPol, basis, MatrixXcd::Random(n, n)),
        TransmissionBlock(Channel::MPol, Channel::EPol, basis, MatrixXcd::Random(n, n)),
        TransmissionBlock(Channel::MPol, Channel::MPol, basis, MatrixXcd::Random(n, n)),
    };
    EmBlockSet twice = complement_em(complement_em(b));
    CHECK((twice.r_ee.matrix - b.r_ee.matrix).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((twice.r_em.matrix - b.r_em.matrix).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((twice.r_me.matrix - b.r_me.matrix).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((twice.r_mm.matrix - b.r_mm.matrix).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((twice.t_ee.matrix - b.t_ee.matrix).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((twice.t_em.matrix - b.t_em.matrix).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((twice.t_me.matrix - b.t_me.matrix).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((twice.t_mm.matrix - b.t_mm.matrix).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("residual of exact limiting pairs") {
    OrderBasis basis = make_basis();
    // (mirror, empty) scalar pair: residual exactly zero
    auto [rd, td] = mirror_amplitudes(Channel::Dirichlet, basis);
    auto [rn, tn] = mirror_amplitudes(Channel::Neumann, basis);
    auto [rd0, td0] = empty_amplitudes(Channel::Dirichlet, basis);
    auto [rn0, tn0] = empty_amplitudes(Channel::Neumann, basis);
    ScalarBlockSet mirror{rd, rn, td, tn};
    ScalarBlockSet empty{rd0, rn0, td0, tn0};
    CHECK(babinet_residual(mirror, empty) == 0.0);

    // a full plane is not self-complementary: order-unity violation
    CHECK(babinet_residual(mirror, mirror) == doctest::Approx(1.0));

    // EM variant
    CHECK(babinet_residual(em_mirror_set(basis), em_empty_set(basis)) == 0.0);
    CHECK(babinet_residual(em_mirror_set(basis), em_mirror_set(basis)) == doctest::Approx(1.0));
}

TEST_CASE("residual rejects mismatched bases") {
    OrderBasis a = make_basis();
    OrderBasis b(1.0, 3, ImaginaryFrequency(1.7), TransverseMomentum(0.2, 0.1));
    auto [rd, td] = mirror_amplitudes(Channel::Dirichlet, a);
    auto [rn, tn] = mirror_amplitudes(Channel::Neumann, a);
    auto [rd2, td2] = mirror_amplitudes(Channel::Dirichlet, b);
    auto [rn2, tn2] = mirror_amplitudes(Channel::Neumann, b);
    ScalarBlockSet sa{rd, rn, td, tn};
    ScalarBlockSet sb{rd2, rn2, td2, tn2};
    CHECK_THROWS_AS(babinet_residual(sa, sb), config_error);
}

TEST_CASE("em complement of solved self-complementary strips") {
    // complement_em of the f=1/2 blocks equals the blocks of the half-period
    // shifted screen, solved independently.
    StripScreen screen(1.0, 0.5, 0.0);
    SolverParams params(16, 16);
    ImaginaryFrequency kappa(1.0);
    TransverseMomentum kt(0.4, 0.2);
    EmBlockSet blocks = em_blocks_from_scalar(screen, kappa, kt, params);
    EmBlockSet transformed = complement_em(blocks);
    EmBlockSet shifted = em_blocks_from_scalar(screen.complement(), kappa, kt, params);
    const int pc = 4; // compare on the resolved central block
    const int off = params.order_cutoff - pc;
    const int dim = 2 * pc + 1;
    auto gap = [&](const MatrixXcd& x, const MatrixXcd& y) {
        return (x.block(off, off, dim, dim) - y.block(off, off, dim, dim)).cwiseAbs().maxCoeff();
    };
    CHECK(gap(transformed.r_ee.matrix, shifted.r_ee.matrix) < 1e-9);
    CHECK(gap(transformed.r_mm.matrix, shifted.r_mm.matrix) < 1e-9);
    CHECK(gap(transformed.t_ee.matrix, shifted.t_ee.matrix) < 1e-9);
    CHECK(gap(transformed.t_mm.matrix, shifted.t_mm.matrix) < 1e-9);
}
