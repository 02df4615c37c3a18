#pragma once

#include <string>

#include "leabra7/layer.hpp"
#include "leabra7/rng.hpp"
#include "leabra7/specs.hpp"
#include "leabra7/types.hpp"

namespace leabra7 {

// Piecewise-linear "check-mark" learning function.
Scalar xcal(Scalar x, Scalar th, Scalar d_rev);

// Sigmoidal contrast enhancement mapping fwt to the effective weight.
// Endpoints are defined by limit: 0 -> 0, 1 -> 1.
Scalar contrast_enhance(Scalar fwt, Scalar sig_offset, Scalar sig_gain);

// Fully connected bundle between two layers. Weights are stored as
// post x pre matrices; connection (pre i, post j) is entry (j, i), and
// the canonical connection order is pre-major (pre outer, post inner) —
// initialization sampling and tidy exports both follow it.
class Projection {
  public:
    Projection(std::string name, const Layer& pre, const Layer& post,
               const ProjnSpec& spec, Rng& rng);

    const std::string& name() const { return name_; }
    const std::string& pre_name() const { return pre_; }
    const std::string& post_name() const { return post_; }
    const ProjnSpec& spec() const { return spec_; }

    Index pre_size() const { return fwt_.cols(); }
    Index post_size() const { return fwt_.rows(); }

    // Deposit wt_scale_rel * wt * act into the receiving layer's input
    // accumulator. Runs after all layers' unit updates; the deposit is
    // integrated on the next cycle.
    void flush(const Layer& pre, Layer& post) const;

    // One XCAL learning step from the layers' current averages.
    void learn(const Layer& pre, const Layer& post);

    const Matrix& fwt() const { return fwt_; }
    const Matrix& wt() const { return wt_; }
    const Matrix& dwt() const { return dwt_; }
    Matrix& mutable_fwt() { return fwt_; }
    Matrix& mutable_wt() { return wt_; }
    Matrix& mutable_dwt() { return dwt_; }

    const Matrix& conn_attribute(const std::string& name) const;

  private:
    std::string name_;
    std::string pre_;
    std::string post_;
    ProjnSpec spec_;
    Matrix fwt_;
    Matrix wt_;
    Matrix dwt_;
};

}  // namespace leabra7
