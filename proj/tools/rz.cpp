#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rz/errors.hpp"
#include "rz/report.hpp"

namespace {

using rz::ordered_json;

struct Options {
  std::string polynomial;
  std::string format;
  std::string initial_terms;
  std::string s_text = "2";
  std::string kappa_text;
  rz::RunConfig cfg;
  bool explicit_shells = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("polynomial", o.polynomial,
                  "monic integer polynomial, e.g. \"x^2-x-1\" or \"[-1,-1,1]\"")
      ->required();
  sub->add_option("--precision", o.cfg.precision_bits,
                  "working precision in bits")
      ->envname("RZ_PRECISION")
      ->check(CLI::Range(64L, 1L << 20));
  sub->add_option("--confidence", o.cfg.confidence_bits,
                  "relation detection confidence in bits")
      ->check(CLI::Range(16L, 1L << 16));
  sub->add_option("--max-coeff", o.cfg.max_coeff,
                  "largest relation coefficient searched for")
      ->check(CLI::Range(1L, 1L << 20));
  sub->add_option("--format", o.format, "output format: json, csv, svg or text");
}

mpq_class parse_decimal(const std::string& text) {
  std::string t = text;
  bool negative = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    negative = t[0] == '-';
    t.erase(0, 1);
  }
  size_t dot = t.find('.');
  std::string digits = dot == std::string::npos ? t : t.substr(0, dot) + t.substr(dot + 1);
  size_t frac = dot == std::string::npos ? 0 : t.size() - dot - 1;
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw rz::InputError("could not parse number: " + text);
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  mpq_class q(num, den);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

// Accepts "a", "bi", "a+bi", "a-bi" with optional unit imaginary ("i", "-i").
rz::ComplexBall parse_complex(const std::string& text, long precision) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw rz::InputError("empty complex number");

  std::string re_part, im_part;
  bool has_im = false;
  if (t.back() == 'i' || t.back() == 'I') {
    has_im = true;
    t.pop_back();
    size_t split = std::string::npos;
    for (size_t i = t.size(); i-- > 1;) {
      if (t[i] == '+' || t[i] == '-') {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) {
      im_part = t;
    } else {
      re_part = t.substr(0, split);
      im_part = t.substr(split);
    }
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
  } else {
    re_part = t;
  }

  mpq_class re = re_part.empty() ? mpq_class(0) : parse_decimal(re_part);
  mpq_class im = has_im ? parse_decimal(im_part) : mpq_class(0);
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision);
  return rz::ComplexBall(rz::RealBall::from_q(re, prec),
                         rz::RealBall::from_q(im, prec));
}

std::vector<mpz_class> parse_integer_list(const std::string& text) {
  std::vector<mpz_class> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.emplace_back(item);
    } catch (const std::invalid_argument&) {
      throw rz::InputError("could not parse integer: " + item);
    }
  }
  return out;
}

rz::MultiIndex parse_multi_index(const std::string& text) {
  rz::MultiIndex out;
  for (const mpz_class& v : parse_integer_list(text)) {
    if (!v.fits_slong_p())
      throw rz::InputError("multi-index entry out of range: " + v.get_str());
    out.push_back(v.get_si());
  }
  return out;
}

std::string pick_format(const std::string& given, const char* fallback,
                        std::initializer_list<const char*> allowed) {
  std::string f = given.empty() ? fallback : given;
  for (const char* a : allowed)
    if (f == a) return f;
  throw rz::InputError("format \"" + f + "\" is not available for this command");
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string flag_list(const ordered_json& classification) {
  std::string out;
  for (auto it = classification.begin(); it != classification.end(); ++it) {
    if (!it.value().get<bool>()) continue;
    if (!out.empty()) out += ", ";
    out += it.key();
  }
  return out.empty() ? "none" : out;
}

void print_lattice_text(const ordered_json& L, const std::string& label) {
  std::cout << label << ": rank " << L["rank"].get<int>() << "\n";
  for (const auto& row : L["basis"]) {
    std::cout << "  (";
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << row[i].get<std::string>();
    }
    std::cout << ")\n";
  }
}

void analyze_text(const ordered_json& j) {
  std::cout << "polynomial: " << j["polynomial"].get<std::string>() << "\n"
            << "degree: " << j["degree"].get<int>() << "\n"
            << "classification: " << flag_list(j["classification"]) << "\n"
            << "norm class: " << j["norm_class"].get<std::string>() << "\n";
  print_lattice_text(j["relation_lattice"], "relation lattice");
  print_lattice_text(j["h0_intersection"], "intersection with H0");
  std::cout << "module trivial: " << j["module_trivial"].dump() << "\n"
            << "indexation injective: " << j["injective"].dump() << "\n";
  if (!j["witness"].is_null()) {
    std::cout << "witness: (";
    const auto& w = j["witness"];
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << w[i].get<std::string>();
    }
    std::cout << ")\n";
  }
  std::cout << "sufficient conditions:\n";
  for (const auto& c : j["sufficient_conditions"])
    std::cout << "  " << c["name"].get<std::string>() << ": "
              << (c["satisfied"].get<bool>() ? "yes" : "no")
              << (c["user_asserted"].get<bool>() ? " (asserted)" : "") << "\n";
  std::cout << "rank check: " << j["rank_check"]["lhs"].get<long>() << " = "
            << j["rank_check"]["rhs"].get<long>() << "\n"
            << "fibre at zero: " << j["fibre_at_zero"].get<long>() << "\n";
}

void zeta_text(const ordered_json& j) {
  const auto& p = j["phi"];
  std::cout << "phi(s)  = " << p["re"].get<std::string>() << " + "
            << p["im"].get<std::string>() << " i  (radius "
            << p["radius"].get<std::string>() << ", "
            << (p["certified_tail"].get<bool>() ? "certified" : "uncertified")
            << " tail, " << p["shells"].get<long>() << " shells)\n";
  if (j["dirichlet"].is_null()) {
    std::cout << "dirichlet sum skipped: "
              << j["dirichlet_skipped"].get<std::string>() << "\n";
  } else {
    const auto& d = j["dirichlet"];
    std::cout << "sum a_n^-s = " << d["re"].get<std::string>() << " + "
              << d["im"].get<std::string>() << " i  (radius "
              << d["radius"].get<std::string>() << ", " << d["terms"].get<long>()
              << " terms)\n";
    std::cout << "enclosures intersect: " << j["enclosures_intersect"].dump()
              << "\n";
  }
}

void poles_text(const std::vector<rz::PlotRow>& rows) {
  for (const rz::PlotRow& r : rows) {
    std::cout << rz::decimal_mid(r.re.mid) << "  " << rz::decimal_mid(r.im.mid)
              << "  fibre " << r.fibre_size << "  kappa (";
    for (size_t i = 0; i < r.representative.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << r.representative[i];
    }
    std::cout << ")\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified zeta functions of integer linear recurrences"};
  app.require_subcommand(1);

  Options o;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "classification, relation lattice and injectivity report");
  add_common(analyze, o);

  CLI::App* poles = app.add_subcommand(
      "poles", "candidate pole locations with fibre sizes");
  add_common(poles, o);
  poles->add_option("--max-kappa", o.cfg.max_kappa, "largest |kappa| enumerated")
      ->check(CLI::Range(0L, 1L << 16));

  CLI::App* zeta = app.add_subcommand(
      "zeta", "evaluate the zeta function by continuation and Dirichlet sum");
  add_common(zeta, o);
  zeta->add_option("--s", o.s_text, "evaluation point, e.g. \"2\" or \"3+1i\"");
  zeta->add_option("--initial-terms", o.initial_terms,
                   "comma-separated initial terms (default: power sums)");
  zeta->add_option("--terms", o.cfg.dirichlet_terms,
                   "Dirichlet partial sum length")
      ->check(CLI::Range(1L, 1L << 20));
  CLI::Option* shells_opt =
      zeta->add_option("--max-kappa", o.cfg.max_kappa,
                       "shell truncation K (default: adaptive)")
          ->check(CLI::Range(0L, 1L << 16));

  CLI::App* fibre = app.add_subcommand(
      "fibre", "size and members of the fibre through a multi-index");
  add_common(fibre, o);
  fibre->add_option("kappa", o.kappa_text,
                    "comma-separated multi-index, e.g. \"3,1,2\"")
      ->required();
  fibre->add_option("--max-kappa", o.cfg.max_kappa,
                    "member listing range")
      ->check(CLI::Range(0L, 1L << 16));

  CLI::App* roots_cmd = app.add_subcommand(
      "roots", "certified conjugate roots and classification flags");
  add_common(roots_cmd, o);

  CLI::App* relations = app.add_subcommand(
      "relations", "multiplicative relation lattice and H0 intersection");
  add_common(relations, o);

  CLI::App* seq = app.add_subcommand("seq", "exact terms of the recurrence");
  add_common(seq, o);
  seq->add_option("--initial-terms", o.initial_terms,
                  "comma-separated initial terms (default: power sums)");
  seq->add_option("--terms", o.cfg.dirichlet_terms, "number of terms to print")
      ->check(CLI::Range(1L, 1L << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  o.explicit_shells = shells_opt->count() > 0;

  std::string sub = app.get_subcommands().front()->get_name();
  try {
    rz::IntPolynomial p = rz::IntPolynomial::parse(o.polynomial);
    if (sub == "analyze") {
      std::string f = pick_format(o.format, "json", {"json", "text"});
      ordered_json j = rz::analyze_report(p, o.cfg);
      if (f == "json")
        emit(j);
      else
        analyze_text(j);
    } else if (sub == "poles") {
      std::string f =
          pick_format(o.format, "csv", {"csv", "json", "svg", "text"});
      std::vector<rz::PlotRow> rows = rz::poles_rows(p, o.cfg);
      if (f == "csv")
        std::cout << rz::poles_csv(rows);
      else if (f == "json")
        emit(rz::poles_json(rows));
      else if (f == "svg")
        std::cout << rz::poles_svg(rows);
      else
        poles_text(rows);
    } else if (sub == "zeta") {
      std::string f = pick_format(o.format, "json", {"json", "text"});
      rz::ComplexBall s = parse_complex(o.s_text, o.cfg.precision_bits);
      std::optional<long> shells;
      if (o.explicit_shells) shells = o.cfg.max_kappa;
      ordered_json j = rz::zeta_report(p, parse_integer_list(o.initial_terms),
                                       s, shells, o.cfg);
      if (f == "json")
        emit(j);
      else
        zeta_text(j);
    } else if (sub == "fibre") {
      std::string f = pick_format(o.format, "json", {"json", "text"});
      ordered_json j = rz::fibre_report(p, parse_multi_index(o.kappa_text), o.cfg);
      if (f == "json") {
        emit(j);
      } else {
        std::cout << "fibre size: " << j["fibre_size"].get<long>()
                  << "\nbrute force: " << j["brute_force"].get<long>()
                  << "\nagree: " << j["agree"].dump() << "\n";
      }
    } else if (sub == "roots") {
      std::string f = pick_format(o.format, "json", {"json", "text"});
      ordered_json j = rz::roots_report(p, o.cfg);
      if (f == "json") {
        emit(j);
      } else {
        std::cout << "polynomial: " << j["polynomial"].get<std::string>() << "\n"
                  << "classification: " << flag_list(j["classification"]) << "\n";
        for (const auto& r : j["roots"])
          std::cout << "  " << r["re"].get<std::string>() << " + "
                    << r["im"].get<std::string>() << " i  (radius "
                    << r["radius"].get<std::string>() << ")\n";
      }
    } else if (sub == "relations") {
      std::string f = pick_format(o.format, "json", {"json", "text"});
      ordered_json j = rz::relations_report(p, o.cfg);
      if (f == "json") {
        emit(j);
      } else {
        std::cout << "norm class: " << j["norm_class"].get<std::string>() << "\n";
        print_lattice_text(j["relation_lattice"], "relation lattice");
        print_lattice_text(j["h0_intersection"], "intersection with H0");
        std::cout << "indexation injective: " << j["injective"].dump() << "\n";
      }
    } else if (sub == "seq") {
      std::string f = pick_format(o.format, "json", {"json", "text"});
      ordered_json j = rz::seq_report(p, parse_integer_list(o.initial_terms),
                                      o.cfg.dirichlet_terms, o.cfg);
      if (f == "json") {
        emit(j);
      } else {
        for (const auto& t : j["terms"])
          std::cout << t.get<std::string>() << "\n";
      }
    }
  } catch (const rz::InputError& e) {
    std::cerr << "rz " << sub << ": input error: " << e.what() << "\n";
    return 1;
  } catch (const rz::PrecisionError& e) {
    std::cerr << "rz " << sub << ": precision error: " << e.what() << "\n";
    return 3;
  } catch (const rz::MathError& e) {
    std::cerr << "rz " << sub << ": math error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rz " << sub << ": error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
