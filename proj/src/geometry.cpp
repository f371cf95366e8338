#include "igamg/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace igamg {

RationalBasis nurbs_eval(const KnotVector& ku, const KnotVector& kv, std::span<const double> weights, double u,
                         double v) {
    const int nu = ku.num_basis();
    const int nv = kv.num_basis();
    if (static_cast<int>(weights.size()) != nu * nv) {
        throw std::invalid_argument("nurbs_eval: weight count does not match the tensor basis");
    }
    const int pu = ku.degree();
    const int pv = kv.degree();
    std::vector<double> Nu(static_cast<std::size_t>(pu + 1)), dNu(Nu.size());
    std::vector<double> Nv(static_cast<std::size_t>(pv + 1)), dNv(Nv.size());

    RationalBasis out;
    out.first_u = eval_basis_into(ku, u, Nu, dNu);
    out.first_v = eval_basis_into(kv, v, Nv, dNv);
    out.count_u = pu + 1;
    out.count_v = pv + 1;
    const std::size_t count = Nu.size() * Nv.size();
    out.value.resize(count);
    out.du.resize(count);
    out.dv.resize(count);

    double W = 0.0, Wu = 0.0, Wv = 0.0;
    for (int b = 0; b <= pv; ++b) {
        for (int a = 0; a <= pu; ++a) {
            const double w = weights[static_cast<std::size_t>(out.first_u + a + nu * (out.first_v + b))];
            if (!(w > 0.0)) {
                throw std::invalid_argument("nurbs_eval: weights must be strictly positive");
            }
            const auto k = static_cast<std::size_t>(a + out.count_u * b);
            out.value[k] = w * Nu[a] * Nv[b];
            out.du[k] = w * dNu[a] * Nv[b];
            out.dv[k] = w * Nu[a] * dNv[b];
            W += out.value[k];
            Wu += out.du[k];
            Wv += out.dv[k];
        }
    }
    for (std::size_t k = 0; k < count; ++k) {
        const double R = out.value[k] / W;
        out.du[k] = out.du[k] / W - R * Wu / W;
        out.dv[k] = out.dv[k] / W - R * Wv / W;
        out.value[k] = R;
    }
    return out;
}

GeometryMap::GeometryMap(KnotVector ku, KnotVector kv, std::vector<Eigen::Vector2d> control,
                         std::vector<double> weights)
    : ku_(std::move(ku)), kv_(std::move(kv)), control_(std::move(control)), weights_(std::move(weights)) {
    const auto n = static_cast<std::size_t>(ku_.num_basis() * kv_.num_basis());
    if (control_.size() != n || weights_.size() != n) {
        throw std::invalid_argument("GeometryMap: control net does not match the tensor basis");
    }
    for (double w : weights_) {
        if (!(w > 0.0)) {
            throw std::invalid_argument("GeometryMap: weights must be strictly positive");
        }
    }
}

GeometryMap::Evaluation GeometryMap::evaluate(double u, double v) const {
    const int nu = ku_.num_basis();
    const int pu = ku_.degree();
    const int pv = kv_.degree();
    std::vector<double> Nu(static_cast<std::size_t>(pu + 1)), dNu(Nu.size());
    std::vector<double> Nv(static_cast<std::size_t>(pv + 1)), dNv(Nv.size());
    const int fu = eval_basis_into(ku_, u, Nu, dNu);
    const int fv = eval_basis_into(kv_, v, Nv, dNv);

    // homogeneous coordinates: (w B, w) and their parametric derivatives
    Eigen::Vector2d X = Eigen::Vector2d::Zero(), Xu = Eigen::Vector2d::Zero(), Xv = Eigen::Vector2d::Zero();
    double W = 0.0, Wu = 0.0, Wv = 0.0;
    for (int b = 0; b <= pv; ++b) {
        for (int a = 0; a <= pu; ++a) {
            const auto idx = static_cast<std::size_t>(fu + a + nu * (fv + b));
            const double w = weights_[idx];
            const Eigen::Vector2d& B = control_[idx];
            const double n = w * Nu[a] * Nv[b];
            const double nu_ = w * dNu[a] * Nv[b];
            const double nv_ = w * Nu[a] * dNv[b];
            X += n * B;
            Xu += nu_ * B;
            Xv += nv_ * B;
            W += n;
            Wu += nu_;
            Wv += nv_;
        }
    }
    Evaluation e;
    e.point = X / W;
    e.jacobian.col(0) = (Xu - e.point * Wu) / W;
    e.jacobian.col(1) = (Xv - e.point * Wv) / W;
    e.weight = W;
    e.weight_gradient = Eigen::Vector2d(Wu, Wv);
    return e;
}

GeometryMap quarter_annulus(double inner, double outer) {
    if (!(inner > 0.0) || !(outer > inner)) {
        throw std::invalid_argument("quarter_annulus: need 0 < inner < outer");
    }
    // radial direction: linear segment written as a quadratic (degree elevated),
    // angular direction: exact quarter circle with middle weight sqrt(2)/2
    const KnotVector radial(2, {0, 0, 0, 1, 1, 1});
    const KnotVector angular(2, {0, 0, 0, 1, 1, 1});
    const double radii[3] = {inner, 0.5 * (inner + outer), outer};
    const Eigen::Vector2d dirs[3] = {{1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    const double wang[3] = {1.0, std::sqrt(0.5), 1.0};

    std::vector<Eigen::Vector2d> control;
    std::vector<double> weights;
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            control.push_back(radii[i] * dirs[j]);
            weights.push_back(wang[j]);
        }
    }
    return GeometryMap(radial, angular, std::move(control), std::move(weights));
}

GeometryMap bilinear_map(const Eigen::Vector2d& c00, const Eigen::Vector2d& c10, const Eigen::Vector2d& c01,
                         const Eigen::Vector2d& c11) {
    const KnotVector lin(1, {0, 0, 1, 1});
    return GeometryMap(lin, lin, {c00, c10, c01, c11}, {1.0, 1.0, 1.0, 1.0});
}

std::vector<double> refined_weights(const GeometryMap& geometry, const KnotVector& ku, const KnotVector& kv) {
    const Eigen::MatrixXd Eu = embedding_matrix(geometry.knots_u(), ku);
    const Eigen::MatrixXd Ev = embedding_matrix(geometry.knots_v(), kv);
    const int su = geometry.knots_u().num_basis();
    const int sv = geometry.knots_v().num_basis();
    const Eigen::Map<const Eigen::MatrixXd> w(geometry.weights().data(), su, sv);
    const Eigen::MatrixXd refined = Eu * w * Ev.transpose();
    return {refined.data(), refined.data() + refined.size()};
}

} // namespace igamg
