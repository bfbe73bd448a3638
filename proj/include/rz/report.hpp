#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rz/poles.hpp"
#include "rz/recurrence.hpp"
#include "rz/relations.hpp"
#include "rz/zeta.hpp"

namespace rz {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  long precision_bits = 256;
  long confidence_bits = 128;
  long max_kappa = 10;
  long max_coeff = 32;
  long dirichlet_terms = 512;
};

// Fixed-width decimal formatting so identical runs are byte identical:
// midpoints use 24 significant digits rounded to nearest (half to even),
// radii 3 significant digits rounded up.
std::string decimal_mid(const Real& x);
std::string decimal_radius(const Real& r);

ordered_json real_ball_json(const RealBall& b);
ordered_json ball_json(const ComplexBall& b);
ordered_json lattice_json(const RelationLattice& L);

// Full pipeline report: classification, norm class, detected lattice with
// verification statuses, H_0 intersection, injectivity verdict and witness,
// sufficient-conditions table and the fibre check at kappa = 0.
ordered_json analyze_report(const IntPolynomial& p, const RunConfig& cfg);

std::vector<PlotRow> poles_rows(const IntPolynomial& p, const RunConfig& cfg);
ordered_json poles_json(const std::vector<PlotRow>& rows);
std::string poles_csv(const std::vector<PlotRow>& rows);
std::string poles_svg(const std::vector<PlotRow>& rows);

// Both evaluations of the zeta function at s: the continuation series with
// its certified/uncertified tail flag and, when Re(s) is certified positive,
// the Dirichlet partial sum, plus whether the enclosures intersect. `shells`
// overrides the adaptive truncation choice.
ordered_json zeta_report(const IntPolynomial& p,
                         const std::vector<mpz_class>& initial_terms,
                         const ComplexBall& s, std::optional<long> shells,
                         const RunConfig& cfg);

ordered_json fibre_report(const IntPolynomial& p, const MultiIndex& kappa,
                          const RunConfig& cfg);

ordered_json roots_report(const IntPolynomial& p, const RunConfig& cfg);
ordered_json relations_report(const IntPolynomial& p, const RunConfig& cfg);
ordered_json seq_report(const IntPolynomial& p,
                        const std::vector<mpz_class>& initial_terms, long count,
                        const RunConfig& cfg);

}  // namespace rz
