#include "leabra7/rng.hpp"

#include <cmath>
#include <sstream>

namespace leabra7 {

Scalar Rng::gaussian(Scalar mean, Scalar sd) {
    if (have_spare_) {
        have_spare_ = false;
        return mean + sd * spare_;
    }
    Scalar u, v, s;
    do {
        u = 2.0 * canonical() - 1.0;
        v = 2.0 * canonical() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const Scalar m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return mean + sd * u * m;
}

std::string Rng::state() const {
    std::ostringstream os;
    os << engine_ << ' ' << (have_spare_ ? 1 : 0) << ' ';
    os.precision(17);
    os << spare_;
    return os.str();
}

void Rng::set_state(const std::string& s) {
    std::istringstream is(s);
    int spare_flag = 0;
    is >> engine_ >> spare_flag >> spare_;
    have_spare_ = spare_flag != 0;
}

}  // namespace leabra7
