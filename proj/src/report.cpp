#include "rz/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "rz/errors.hpp"
#include "rz/intlinalg.hpp"

namespace rz {

namespace {

std::string format_digits(const Real& x, size_t digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x.ptr())) return "0";
  if (!mpfr_number_p(x.ptr())) return mpfr_nan_p(x.ptr()) ? "nan" : "inf";
  mpfr_exp_t e;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, x.ptr(), rnd);
  std::string ds(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!ds.empty() && ds[0] == '-') {
    sign = "-";
    ds.erase(0, 1);
  }
  long exp10 = static_cast<long>(e) - 1;
  std::string out = sign + ds.substr(0, 1) + "." + ds.substr(1) + "e";
  out += exp10 < 0 ? "-" : "+";
  long mag = exp10 < 0 ? -exp10 : exp10;
  std::string es = std::to_string(mag);
  if (es.size() < 2) es.insert(es.begin(), '0');
  return out + es;
}

ordered_json int_vec_json(const IntVec& v) {
  ordered_json a = ordered_json::array();
  for (const mpz_class& x : v) a.push_back(x.get_str());
  return a;
}

ordered_json multi_index_json(const MultiIndex& k) {
  ordered_json a = ordered_json::array();
  for (long x : k) a.push_back(x);
  return a;
}

const char* norm_class_name(NormClass c) {
  switch (c) {
    case NormClass::kNormPlusOne: return "plus_one";
    case NormClass::kNormMinusOne: return "minus_one";
    default: return "not_unit";
  }
}

ordered_json classification_json(const ConjugateSystem& sys) {
  ordered_json c;
  c["perron"] = sys.is_perron;
  c["pisot"] = sys.is_pisot;
  c["salem"] = sys.is_salem;
  c["unit"] = sys.is_unit;
  c["reciprocal"] = sys.is_reciprocal;
  return c;
}

struct Pipeline {
  ConjugateSystem system;
  RelationLattice lattice;
  RelationLattice h0;
};

Pipeline run_pipeline(const IntPolynomial& p, const RunConfig& cfg) {
  ConjugateSystem sys = classify(p, isolate_roots(p, cfg.precision_bits));
  RelationLattice lattice = find_relation_lattice(
      sys, cfg.precision_bits, cfg.confidence_bits, cfg.max_coeff);
  RelationLattice h0 = intersect_with_H0(lattice);
  return Pipeline{std::move(sys), std::move(lattice), std::move(h0)};
}

// Fibre members within |eta| <= limit, by exact coset membership.
std::vector<MultiIndex> fibre_members(const ConjugateSystem& sys,
                                      const RelationLattice& L0,
                                      const MultiIndex& kappa, long limit) {
  int w = sys.degree() - 1;
  IntVec target = extended_vector(kappa);
  std::vector<MultiIndex> found;
  MultiIndex eta(w, 0);
  std::function<void(int, long)> walk = [&](int pos, long rem) {
    if (pos == w) {
      IntVec d = extended_vector(eta);
      for (size_t i = 0; i < d.size(); ++i) d[i] -= target[i];
      if (lattice_contains(L0.basis, d)) found.push_back(eta);
      return;
    }
    for (long k = 0; k <= rem; ++k) {
      eta[pos] = k;
      walk(pos + 1, rem - k);
    }
    eta[pos] = 0;
  };
  walk(0, limit);
  return found;
}

// Largest shell count whose index total stays within an evaluation budget, so
// the adaptive truncation cannot pick an astronomically slow K on wide
// systems.
long shell_budget(int width, long cap) {
  const double kMaxIndices = 2.0e6;
  long best = 0;
  for (long k = 0; k <= cap; ++k) {
    double count = 1;
    for (int i = 1; i <= width; ++i)
      count *= static_cast<double>(k + i) / static_cast<double>(i);
    if (count > kMaxIndices) break;
    best = k;
  }
  return best;
}

std::string svg_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string decimal_mid(const Real& x) { return format_digits(x, 24, MPFR_RNDN); }

std::string decimal_radius(const Real& r) { return format_digits(r, 3, MPFR_RNDU); }

ordered_json real_ball_json(const RealBall& b) {
  ordered_json j;
  j["mid"] = decimal_mid(b.mid);
  j["radius"] = decimal_radius(b.rad);
  return j;
}

ordered_json ball_json(const ComplexBall& b) {
  ordered_json j;
  j["re"] = decimal_mid(b.re.mid);
  j["im"] = decimal_mid(b.im.mid);
  j["radius"] = decimal_radius(b.radius());
  return j;
}

ordered_json lattice_json(const RelationLattice& L) {
  ordered_json j;
  j["ambient_rank"] = L.ambient_rank;
  ordered_json basis = ordered_json::array();
  for (const IntVec& row : L.basis) basis.push_back(int_vec_json(row));
  j["basis"] = basis;
  j["rank"] = L.rank;
  ordered_json verified = ordered_json::array();
  for (bool v : L.verified) verified.push_back(v);
  j["verified"] = verified;
  j["confidence_bits"] = L.confidence_bits;
  return j;
}

ordered_json analyze_report(const IntPolynomial& p, const RunConfig& cfg) {
  ConjugateSystem sys = classify(p, isolate_roots(p, cfg.precision_bits));
  InjectivityResult inj = decide_injectivity(sys, cfg.precision_bits,
                                             cfg.confidence_bits, cfg.max_coeff);

  SufficientReport suff = sufficient_conditions(sys, {});
  RankCheck rc = rank_arithmetic_check(inj.lattice, h0_lattice(sys.degree()));

  ordered_json j;
  j["polynomial"] = p.to_string();
  j["degree"] = sys.degree();
  j["precision_bits"] = static_cast<long>(cfg.precision_bits);
  j["confidence_bits"] = cfg.confidence_bits;
  j["classification"] = classification_json(sys);
  j["norm_class"] = norm_class_name(norm_class(p));
  ordered_json roots = ordered_json::array();
  for (const ComplexBall& r : sys.roots) roots.push_back(ball_json(r));
  j["roots"] = roots;
  j["relation_lattice"] = lattice_json(inj.lattice);
  j["h0_intersection"] = lattice_json(inj.h0_intersection);
  j["module_trivial"] = is_trivial(inj.lattice);
  j["injective"] = inj.injective;
  j["witness"] = inj.witness ? int_vec_json(*inj.witness) : ordered_json(nullptr);
  ordered_json conds = ordered_json::array();
  for (const ConditionStatus& c : suff.conditions) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["satisfied"] = c.satisfied;
    cj["user_asserted"] = c.user_asserted;
    conds.push_back(cj);
  }
  j["sufficient_conditions"] = conds;
  j["sufficient_condition_holds"] = suff.module_trivial;
  j["rank_check"] = ordered_json{{"lhs", rc.lhs}, {"rhs", rc.rhs}};
  j["fibre_at_zero"] =
      fibre_size(sys, inj.h0_intersection, MultiIndex(sys.degree() - 1, 0));
  return j;
}

std::vector<PlotRow> poles_rows(const IntPolynomial& p, const RunConfig& cfg) {
  Pipeline pipe = run_pipeline(p, cfg);
  return plot_data(enumerate_poles(pipe.system, pipe.h0, cfg.max_kappa));
}

ordered_json poles_json(const std::vector<PlotRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const PlotRow& r : rows) {
    ordered_json j;
    j["re"] = decimal_mid(r.re.mid);
    j["im"] = decimal_mid(r.im.mid);
    j["fibre_size"] = r.fibre_size;
    j["representative_kappa"] = multi_index_json(r.representative);
    Real rad(kRadPrec);
    mpfr_max(rad.ptr(), r.re.rad.ptr(), r.im.rad.ptr(), MPFR_RNDU);
    j["radius"] = decimal_radius(rad);
    arr.push_back(j);
  }
  return arr;
}

std::string poles_csv(const std::vector<PlotRow>& rows) {
  std::ostringstream out;
  out << "re,im,fibre_size,representative_kappa\n";
  for (const PlotRow& r : rows) {
    out << decimal_mid(r.re.mid) << ',' << decimal_mid(r.im.mid) << ','
        << r.fibre_size << ',';
    for (size_t i = 0; i < r.representative.size(); ++i) {
      if (i) out << ';';
      out << r.representative[i];
    }
    out << '\n';
  }
  return out.str();
}

std::string poles_svg(const std::vector<PlotRow>& rows) {
  const double kW = 640, kH = 480, kMargin = 60;
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
  bool first = true;
  for (const PlotRow& r : rows) {
    double x = r.re.mid.to_double();
    double y = r.im.mid.to_double();
    if (first) {
      re_min = re_max = x;
      im_min = im_max = y;
      first = false;
    }
    re_min = std::min(re_min, x);
    re_max = std::max(re_max, x);
    im_min = std::min(im_min, y);
    im_max = std::max(im_max, y);
  }
  if (re_max - re_min < 1e-9) {
    re_min -= 1;
    re_max += 1;
  }
  if (im_max - im_min < 1e-9) {
    im_min -= 1;
    im_max += 1;
  }
  auto sx = [&](double x) {
    return kMargin + (x - re_min) / (re_max - re_min) * (kW - 2 * kMargin);
  };
  auto sy = [&](double y) {
    return kH - kMargin - (y - im_min) / (im_max - im_min) * (kH - 2 * kMargin);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n";
  out << "  <rect x=\"" << svg_num(kMargin) << "\" y=\"" << svg_num(kMargin)
      << "\" width=\"" << svg_num(kW - 2 * kMargin) << "\" height=\""
      << svg_num(kH - 2 * kMargin)
      << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  out << "  <text x=\"" << svg_num(kW - kMargin + 8) << "\" y=\""
      << svg_num(kH - kMargin + 4) << "\" font-size=\"14\">Re</text>\n";
  out << "  <text x=\"" << svg_num(kMargin - 10) << "\" y=\""
      << svg_num(kMargin - 12) << "\" font-size=\"14\">Im</text>\n";
  if (im_min < 0 && im_max > 0)
    out << "  <line x1=\"" << svg_num(kMargin) << "\" y1=\"" << svg_num(sy(0))
        << "\" x2=\"" << svg_num(kW - kMargin) << "\" y2=\"" << svg_num(sy(0))
        << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
  if (re_min < 0 && re_max > 0)
    out << "  <line x1=\"" << svg_num(sx(0)) << "\" y1=\"" << svg_num(kMargin)
        << "\" x2=\"" << svg_num(sx(0)) << "\" y2=\"" << svg_num(kH - kMargin)
        << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
  for (const PlotRow& r : rows) {
    out << "  <circle cx=\"" << svg_num(sx(r.re.mid.to_double())) << "\" cy=\""
        << svg_num(sy(r.im.mid.to_double())) << "\" r=\""
        << svg_num(2.0 * static_cast<double>(r.fibre_size))
        << "\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

ordered_json zeta_report(const IntPolynomial& p,
                         const std::vector<mpz_class>& initial_terms,
                         const ComplexBall& s, std::optional<long> shells,
                         const RunConfig& cfg) {
  ConjugateSystem sys = classify(p, isolate_roots(p, cfg.precision_bits));
  RecurrenceSpec spec = initial_terms.empty()
                            ? make_recurrence(sys)
                            : make_recurrence(sys, initial_terms);

  long K;
  if (shells) {
    K = *shells;
  } else {
    long cap = shell_budget(sys.degree() - 1, 320);
    K = suggest_truncation(spec, s, 44, cap);
    // The cap return means no K in range certified the target; fall back to a
    // cheap truncation and let the tail flag report the situation.
    if (K == cap) K = std::min(cfg.max_kappa, cap);
  }
  PhiResult phi = phi_eval(spec, s, K);

  ordered_json j;
  j["polynomial"] = p.to_string();
  ordered_json init = ordered_json::array();
  for (const mpz_class& a : spec.initial_terms) init.push_back(a.get_str());
  j["initial_terms"] = init;
  j["n0"] = spec.n0;
  j["precision_bits"] = static_cast<long>(cfg.precision_bits);
  j["s"] = ordered_json{{"re", decimal_mid(s.re.mid)},
                        {"im", decimal_mid(s.im.mid)}};
  ordered_json pj = ball_json(phi.value);
  pj["certified_tail"] = phi.certified_tail;
  pj["shells"] = K;
  j["phi"] = pj;
  if (s.re.is_positive()) {
    ComplexBall d = dirichlet_sum(spec, s, cfg.dirichlet_terms);
    ordered_json dj = ball_json(d);
    dj["terms"] = cfg.dirichlet_terms;
    j["dirichlet"] = dj;
    j["enclosures_intersect"] = cb_intersect(phi.value, d).has_value();
  } else {
    j["dirichlet"] = nullptr;
    j["dirichlet_skipped"] = "Re(s) enclosure not certified positive";
    j["enclosures_intersect"] = nullptr;
  }
  return j;
}

ordered_json fibre_report(const IntPolynomial& p, const MultiIndex& kappa,
                          const RunConfig& cfg) {
  Pipeline pipe = run_pipeline(p, cfg);
  const ConjugateSystem& sys = pipe.system;

  long size = fibre_size(sys, pipe.h0, kappa);
  ComplexBall location = pole_location(sys, kappa, 0);
  long bound = kappa_bound(sys, location.re);
  long brute = fibre_brute_force(sys, kappa, bound, cfg.confidence_bits);
  std::vector<MultiIndex> members =
      fibre_members(sys, pipe.h0, kappa, cfg.max_kappa);

  ordered_json j;
  j["polynomial"] = p.to_string();
  j["kappa"] = multi_index_json(kappa);
  j["precision_bits"] = static_cast<long>(cfg.precision_bits);
  j["confidence_bits"] = cfg.confidence_bits;
  j["fibre_size"] = size;
  j["brute_force"] = brute;
  j["agree"] = size == brute;
  j["kappa_bound"] = bound;
  j["location"] = ball_json(location);
  ordered_json ms = ordered_json::array();
  for (const MultiIndex& m : members) ms.push_back(multi_index_json(m));
  j["members_within_max_kappa"] = ms;
  return j;
}

ordered_json roots_report(const IntPolynomial& p, const RunConfig& cfg) {
  ConjugateSystem sys = classify(p, isolate_roots(p, cfg.precision_bits));
  ordered_json j;
  j["polynomial"] = p.to_string();
  j["degree"] = sys.degree();
  j["precision_bits"] = static_cast<long>(cfg.precision_bits);
  j["classification"] = classification_json(sys);
  j["norm_class"] = norm_class_name(norm_class(p));
  ordered_json roots = ordered_json::array();
  for (const ComplexBall& r : sys.roots) roots.push_back(ball_json(r));
  j["roots"] = roots;
  j["log_alpha"] = real_ball_json(sys.log_alpha);
  return j;
}

ordered_json relations_report(const IntPolynomial& p, const RunConfig& cfg) {
  Pipeline pipe = run_pipeline(p, cfg);
  ordered_json j;
  j["polynomial"] = p.to_string();
  j["precision_bits"] = static_cast<long>(cfg.precision_bits);
  j["confidence_bits"] = cfg.confidence_bits;
  j["norm_class"] = norm_class_name(norm_class(p));
  j["relation_lattice"] = lattice_json(pipe.lattice);
  j["h0_intersection"] = lattice_json(pipe.h0);
  j["module_trivial"] = is_trivial(pipe.lattice);
  j["injective"] = pipe.h0.rank == 0;
  return j;
}

ordered_json seq_report(const IntPolynomial& p,
                        const std::vector<mpz_class>& initial_terms, long count,
                        const RunConfig& cfg) {
  if (count < 1) throw InputError("term count must be positive");
  ConjugateSystem sys = classify(p, isolate_roots(p, cfg.precision_bits));
  RecurrenceSpec spec = initial_terms.empty()
                            ? make_recurrence(sys)
                            : make_recurrence(sys, initial_terms);
  std::vector<mpz_class> a = terms(spec, count);
  ordered_json j;
  j["polynomial"] = p.to_string();
  ordered_json init = ordered_json::array();
  for (const mpz_class& v : spec.initial_terms) init.push_back(v.get_str());
  j["initial_terms"] = init;
  j["n0"] = spec.n0;
  ordered_json ts = ordered_json::array();
  for (const mpz_class& v : a) ts.push_back(v.get_str());
  j["terms"] = ts;
  return j;
}

}  // namespace rz
