#include "screens/babinet.hpp"

namespace screens {

namespace {

Channel flip_scalar(Channel c) {
    switch (c) {
        case Channel::Dirichlet: return Channel::Neumann;
        case Channel::Neumann: return Channel::Dirichlet;
        case Channel::EPol: return Channel::MPol;
        case Channel::MPol: return Channel::EPol;
    }
    return c;
}

void require_same_basis(const OrderBasis& a, const OrderBasis& b) {
    if (!a.same_basis(b))
        throw config_error("babinet: blocks do not share an order basis");
}

} // namespace

void EmBlockSet::check_shared_basis() const {
    require_same_basis(r_ee.basis, r_em.basis);
    require_same_basis(r_ee.basis, r_me.basis);
    require_same_basis(r_ee.basis, r_mm.basis);
    require_same_basis(r_ee.basis, t_ee.basis);
    require_same_basis(r_ee.basis, t_em.basis);
    require_same_basis(r_ee.basis, t_me.basis);
    require_same_basis(r_ee.basis, t_mm.basis);
}

ReflectionBlock complement_reflection_scalar(const ReflectionBlock& r) {
    const int n = r.basis.dimension();
    const MatrixXcd eye = MatrixXcd::Identity(n, n);
    MatrixXcd m;
    if (is_dirichlet_like(r.channel_in))
        m = r.matrix + eye; // R~^N = R^D + I
    else
        m = r.matrix - eye; // R~^D = R^N - I
    return ReflectionBlock(flip_scalar(r.channel_in), flip_scalar(r.channel_out), r.basis, std::move(m));
}

TransmissionBlock complement_transmission_scalar(const TransmissionBlock& t) {
    const int n = t.basis.dimension();
    MatrixXcd m = -MatrixXcd::Identity(n, n) - t.matrix;
    return TransmissionBlock(flip_scalar(t.channel_in), flip_scalar(t.channel_out), t.basis, std::move(m));
}

EmBlockSet complement_em(const EmBlockSet& b) {
    b.check_shared_basis();
    const int n = b.r_ee.basis.dimension();
    const MatrixXcd eye = MatrixXcd::Identity(n, n);
    const OrderBasis& basis = b.r_ee.basis;
    return EmBlockSet{
        ReflectionBlock(Channel::EPol, Channel::EPol, basis, b.r_mm.matrix - eye),
        ReflectionBlock(Channel::EPol, Channel::MPol, basis, -b.r_me.matrix),
        ReflectionBlock(Channel::MPol, Channel::EPol, basis, -b.r_em.matrix),
        ReflectionBlock(Channel::MPol, Channel::MPol, basis, b.r_ee.matrix + eye),
        TransmissionBlock(Channel::EPol, Channel::EPol, basis, -eye - b.t_mm.matrix),
        TransmissionBlock(Channel::EPol, Channel::MPol, basis, b.t_me.matrix),
        TransmissionBlock(Channel::MPol, Channel::EPol, basis, b.t_em.matrix),
        TransmissionBlock(Channel::MPol, Channel::MPol, basis, -eye - b.t_ee.matrix),
    };
}

double babinet_residual(const ScalarBlockSet& s, const ScalarBlockSet& c) {
    require_same_basis(s.r_d.basis, c.r_n.basis);
    require_same_basis(s.r_n.basis, c.r_d.basis);
    require_same_basis(s.t_d.basis, c.t_n.basis);
    const int n = s.r_d.basis.dimension();
    const MatrixXcd eye = MatrixXcd::Identity(n, n);
    double res = 0.0;
    res = std::max(res, (s.r_d.matrix - c.r_n.matrix + eye).cwiseAbs().maxCoeff());
    res = std::max(res, (s.r_n.matrix - c.r_d.matrix - eye).cwiseAbs().maxCoeff());
    res = std::max(res, (s.t_d.matrix + c.t_n.matrix + eye).cwiseAbs().maxCoeff());
    res = std::max(res, (s.t_n.matrix + c.t_d.matrix + eye).cwiseAbs().maxCoeff());
    return res;
}

double babinet_residual(const EmBlockSet& s, const EmBlockSet& c) {
    s.check_shared_basis();
    c.check_shared_basis();
    require_same_basis(s.r_ee.basis, c.r_ee.basis);
    const int n = s.r_ee.basis.dimension();
    const MatrixXcd eye = MatrixXcd::Identity(n, n);
    double res = 0.0;
    res = std::max(res, (s.r_mm.matrix - c.r_ee.matrix - eye).cwiseAbs().maxCoeff());
    res = std::max(res, (s.r_ee.matrix - c.r_mm.matrix + eye).cwiseAbs().maxCoeff());
    res = std::max(res, (s.r_me.matrix + c.r_em.matrix).cwiseAbs().maxCoeff());
    res = std::max(res, (s.r_em.matrix + c.r_me.matrix).cwiseAbs().maxCoeff());
    res = std::max(res, (s.t_mm.matrix + c.t_ee.matrix + eye).cwiseAbs().maxCoeff());
    res = std::max(res, (s.t_ee.matrix + c.t_mm.matrix + eye).cwiseAbs().maxCoeff());
    res = std::max(res, (s.t_me.matrix - c.t_em.matrix).cwiseAbs().maxCoeff());
    res = std::max(res, (s.t_em.matrix - c.t_me.matrix).cwiseAbs().maxCoeff());
    return res;
}

EmBlockSet em_mirror_set(const OrderBasis& basis) {
    const int n = basis.dimension();
    const MatrixXcd eye = MatrixXcd::Identity(n, n);
    const MatrixXcd zero = MatrixXcd::Zero(n, n);
    return EmBlockSet{
        ReflectionBlock(Channel::EPol, Channel::EPol, basis, -eye),
        ReflectionBlock(Channel::EPol, Channel::MPol, basis, zero),
        ReflectionBlock(Channel::MPol, Channel::EPol, basis, zero),
        ReflectionBlock(Channel::MPol, Channel::MPol, basis, eye),
        TransmissionBlock(Channel::EPol, Channel::EPol, basis, -eye),
        TransmissionBlock(Channel::EPol, Channel::MPol, basis, zero),
        TransmissionBlock(Channel::MPol, Channel::EPol, basis, zero),
        TransmissionBlock(Channel::MPol, Channel::MPol, basis, -eye),
    };
}

EmBlockSet em_empty_set(const OrderBasis& basis) {
    const int n = basis.dimension();
    const MatrixXcd zero = MatrixXcd::Zero(n, n);
    return EmBlockSet{
        ReflectionBlock(Channel::EPol, Channel::EPol, basis, zero),
        ReflectionBlock(Channel::EPol, Channel::MPol, basis, zero),
        ReflectionBlock(Channel::MPol, Channel::EPol, basis, zero),
        ReflectionBlock(Channel::MPol, Channel::MPol, basis, zero),
        TransmissionBlock(Channel::EPol, Channel::EPol, basis, zero),
        TransmissionBlock(Channel::EPol, Channel::MPol, basis, zero),
        TransmissionBlock(Channel::MPol, Channel::EPol, basis, zero),
        TransmissionBlock(Channel::MPol, Channel::MPol, basis, zero),
    };
}

} // namespace screens
