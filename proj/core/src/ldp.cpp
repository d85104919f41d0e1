#include "loggas/ldp.hpp"

#include <cmath>
#include <sstream>

#include "loggas/errors.hpp"
#include "loggas/oracle.hpp"
#include "loggas/weight.hpp"

namespace loggas {

LdpProbeReport ldp_probe(const EnsembleSpec& spec, const std::function<double(double)>& g,
                         double t, int n_max, double constrained_rate, int resolution) {
    if (n_max < 1 || n_max > 3) throw ConfigError("ldp_probe: n_max must be 1..3");
    LdpProbeReport rep;
    rep.constrained_rate = constrained_rate;
    rep.bound_line = 0.5 * constrained_rate;

    for (int n = 1; n <= n_max; ++n) {
        const OracleResult res = quadrature_oracle(spec, n, resolution, {{g, t}});
        const double q = res.event_probabilities[0];
        const double floor = res.error_estimate / res.z;
        LdpProbePoint pt;
        pt.n = n;
        pt.event_probability = q;
        if (q == 0.0) {
            pt.exponent = kPosInf;
            std::ostringstream msg;
            msg << "n=" << n << ": event carries no quadrature mass (exponent +inf)";
            rep.flags.push_back(msg.str());
        } else {
            if (q < floor)
                throw NumericalError("ldp_probe: event probability below the quadrature "
                                     "error floor; raise resolution",
                                     q);
            pt.exponent = -std::log(q) / (static_cast<double>(n) * n);
        }
        pt.below_bound_line = pt.exponent < rep.bound_line;
        if (pt.below_bound_line) {
            std::ostringstream msg;
            msg << "n=" << n << ": exponent " << pt.exponent
                << " below the asymptotic bound line " << rep.bound_line
                << " (finite-size effect, reported only)";
            rep.flags.push_back(msg.str());
        }
        rep.points.push_back(pt);
    }

    rep.monotone_toward_limit = true;
    for (std::size_t i = 1; i < rep.points.size(); ++i) {
        const double prev = std::abs(rep.points[i - 1].exponent - constrained_rate);
        const double cur = std::abs(rep.points[i].exponent - constrained_rate);
        if (!(cur <= prev + 1e-12)) rep.monotone_toward_limit = false;
    }
    return rep;
}

}  // namespace loggas
