#include "cdg/basis.hpp"

#include <stdexcept>

#include "cdg/quadrature.hpp"

namespace cdg {

TensorBasis::TensorBasis(int k) : k_(k) {
    if (k < 1 || k > kMaxDegree) throw std::invalid_argument("TensorBasis: k must be in [1,4]");
    nodes_ = lobatto_nodes(k);
    bary_w_.assign(k + 1, 1.0);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            if (j != i) bary_w_[i] /= (nodes_[i] - nodes_[j]);
}

double TensorBasis::eval_1d(int i, double x) const {
    double v = bary_w_[i];
    for (int j = 0; j <= k_; ++j)
        if (j != i) v *= (x - nodes_[j]);
    return v;
}

double TensorBasis::deriv_1d(int i, double x) const {
    // product-rule sum over the omitted factor
    double d = 0.0;
    for (int m = 0; m <= k_; ++m) {
        if (m == i) continue;
        double term = bary_w_[i];
        for (int j = 0; j <= k_; ++j)
            if (j != i && j != m) term *= (x - nodes_[j]);
        d += term;
    }
    return d;
}

void TensorBasis::values(Point ref, double* out) const {
    double lx[kMaxDegree + 1], ly[kMaxDegree + 1];
    for (int i = 0; i <= k_; ++i) {
        lx[i] = eval_1d(i, ref.x);
        ly[i] = eval_1d(i, ref.y);
    }
    for (int iy = 0; iy <= k_; ++iy)
        for (int ix = 0; ix <= k_; ++ix) out[iy * (k_ + 1) + ix] = lx[ix] * ly[iy];
}

void TensorBasis::gradients(Point ref, Point* out) const {
    double lx[kMaxDegree + 1], ly[kMaxDegree + 1];
    double dx[kMaxDegree + 1], dy[kMaxDegree + 1];
    for (int i = 0; i <= k_; ++i) {
        lx[i] = eval_1d(i, ref.x);
        ly[i] = eval_1d(i, ref.y);
        dx[i] = deriv_1d(i, ref.x);
        dy[i] = deriv_1d(i, ref.y);
    }
    for (int iy = 0; iy <= k_; ++iy)
        for (int ix = 0; ix <= k_; ++ix)
            out[iy * (k_ + 1) + ix] = {dx[ix] * ly[iy], lx[ix] * dy[iy]};
}

}  // namespace cdg
