#include "leabra7/projection.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace leabra7 {

Scalar xcal(Scalar x, Scalar th, Scalar d_rev) {
    if (x > th * d_rev) return x - th;
    return -x * (1.0 - d_rev) / d_rev;
}

Scalar contrast_enhance(Scalar fwt, Scalar sig_offset, Scalar sig_gain) {
    if (fwt <= 0.0) return 0.0;
    if (fwt >= 1.0) return 1.0;
    return 1.0 / (1.0 + std::pow(sig_offset * (1.0 - fwt) / fwt, sig_gain));
}

Projection::Projection(std::string name, const Layer& pre, const Layer& post,
                       const ProjnSpec& spec, Rng& rng)
    : name_(std::move(name)), pre_(pre.name()), post_(post.name()), spec_(spec) {
    spec_.validate();
    const Index np = pre.size();
    const Index nq = post.size();
    fwt_.resize(nq, np);
    // Pre-major sampling order: all of pre unit 0's connections first.
    for (Index i = 0; i < np; ++i) {
        for (Index j = 0; j < nq; ++j) {
            fwt_(j, i) = sample(spec_.dist, rng);
        }
    }
    wt_ = fwt_.unaryExpr([&](Scalar f) {
        return contrast_enhance(f, spec_.sig_offset, spec_.sig_gain);
    });
    dwt_ = Matrix::Zero(nq, np);
}

void Projection::flush(const Layer& pre, Layer& post) const {
    post.add_input(spec_.wt_scale_rel *
                   (wt_ * pre.units().act.matrix()).array());
}

void Projection::learn(const Layer& pre, const Layer& post) {
    const auto& ps = spec_;
    const Vector& pre_s = pre.units().avg_s.matrix();
    const Vector& pre_m = pre.units().avg_m.matrix();
    const Vector& post_s = post.units().avg_s.matrix();
    const Vector& post_m = post.units().avg_m.matrix();
    const Vector& post_l = post.units().avg_l.matrix();

    const ArrayXX srs = (post_s * pre_s.transpose()).array();
    const ArrayXX srm = (post_m * pre_m.transpose()).array();
    const ArrayXX sm_mix = ps.s_mix * srs + (1.0 - ps.s_mix) * srm;
    const ArrayXX thr = ps.thr_l_mix * (post_l * pre_m.transpose()).array() +
                        (1.0 - ps.thr_l_mix) * srm;

    ArrayXX dwt = sm_mix.binaryExpr(thr, [&](Scalar x, Scalar th) {
        return ps.lrate * xcal(x, th, ps.d_rev);
    });
    // Soft bounding against the pre-update fwt.
    dwt *= (dwt > 0.0).select(1.0 - fwt_.array(), fwt_.array());
    dwt_ = dwt.matrix();
    // Soft bounding keeps fwt in [0, 1] only while |dwt| <= 1 per step; the
    // clamp makes the bound hold for every valid spec.
    fwt_ = (fwt_ + dwt_).cwiseMax(0.0).cwiseMin(1.0);
    wt_ = fwt_.unaryExpr([&](Scalar f) {
        return contrast_enhance(f, ps.sig_offset, ps.sig_gain);
    });
}

const Matrix& Projection::conn_attribute(const std::string& name) const {
    if (name == "conn_wt") return wt_;
    if (name == "conn_fwt") return fwt_;
    if (name == "conn_dwt") return dwt_;
    throw std::invalid_argument("unknown connection attribute " + name);
}

}  // namespace leabra7
