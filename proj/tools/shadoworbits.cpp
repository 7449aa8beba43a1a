#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "shadow/parallel.hpp"
#include "shadow/verify.hpp"
#include "shadow/zeta.hpp"

using namespace shadow;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kMismatch = 1, kConfig = 2 };

struct Config {
  std::string algebra = "sl2";
  Int p = 5;
  int r = 1;
  int m = 1;
  int terms = 3;
  std::uint64_t bound = 10'000'000;
  int threads = default_threads();
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  std::uint64_t samples = 1000;
};

LieLattice algebra_of(const Config& c) {
  if (c.algebra == "sl2") return LieLattice::sl(2);
  if (c.algebra == "sl3") return LieLattice::sl(3);
  throw ConfigError("unknown algebra " + c.algebra);
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ConfigError("cannot write " + c.out);
  f << text;
}

BigInt power_of(Int p, int k) {
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

std::string report_csv(const std::vector<VerifyReport>& reports) {
  std::ostringstream os;
  os << "target,algebra,p,levels,instances,skipped,failures,passed\n";
  for (const auto& r : reports) {
    std::string levels;
    for (int l : r.levels) levels += (levels.empty() ? "" : ";") + std::to_string(l);
    os << r.target << ',' << r.algebra << ',' << r.p << ',' << levels << ',' << r.instances << ','
       << r.skipped << ',' << r.failures << ',' << (r.passed() ? "true" : "false") << '\n';
  }
  return os.str();
}

int cmd_verify(const Config& c, const std::string& target) {
  std::vector<VerifyReport> reports;
  if (target == "thmA" || target == "thmB" || target == "thmD" || target == "nlifts") {
    const auto lie = algebra_of(c);
    if (c.r < 1) throw ConfigError("--r must be at least 1");
    std::vector<LiftingStudy> studies;
    for (int level = 1; level <= c.r; ++level) studies.push_back(study_lifts(lie, c.p, level, c.bound));
    if (target == "nlifts") {
      reports.push_back(verify_lift_independence(studies));
    } else {
      VerifyReport total;
      total.target = target;
      total.algebra = lie.name();
      total.p = c.p;
      json per_level = json::array();
      for (const auto& st : studies) {
        const auto& rep = target == "thmA" ? st.thm_a : target == "thmB" ? st.thm_b : st.thm_d;
        total.levels.push_back(st.r);
        total.absorb(rep);
        per_level.push_back(rep.to_json());
      }
      total.details["perLevel"] = per_level;
      reports.push_back(total);
    }
  } else if (target == "exp") {
    ExpSuiteOptions opts;
    opts.p = c.p;
    opts.threads = c.threads;
    opts.seed = c.seed.value_or(1);
    opts.gl3_samples = c.samples;
    reports.push_back(verify_exp(opts));
  } else if (target == "shadows") {
    reports.push_back(verify_shadows(algebra_of(c), c.p, c.r, c.bound));
  } else {
    throw ConfigError("unknown verify target " + target);
  }
  if (c.format == "csv") {
    emit(c, report_csv(reports));
  } else {
    json j = reports.size() == 1 ? reports[0].to_json() : json::array();
    emit(c, json_text(j));
  }
  for (const auto& r : reports)
    if (!r.passed()) return kMismatch;
  return kPass;
}

std::string table_csv(const Sl3Table& t) {
  std::ostringstream os;
  os << "S,T,dPrime,zPrime,deltaPrime,Delta,DeltaOracle,match\n";
  auto cell = [](const TableCell& c) { return c.poly.str(); };
  for (const auto& row : t.rows) {
    os << row.s << ',' << row.t << ',' << cell(row.d_prime) << ',' << cell(row.z_prime) << ','
       << cell(row.delta_prime) << ',' << cell(row.delta) << ','
       << (row.delta.oracle ? row.delta.oracle->str() : "") << ','
       << (row.d_prime.match() && row.z_prime.match() && row.delta_prime.match() && row.delta.match() ? "true" : "false")
       << '\n';
  }
  return os.str();
}

int cmd_table(const Config& c, bool oracle) {
  const auto table = sl3_table(c.p, oracle, c.threads, c.bound);
  emit(c, c.format == "csv" ? table_csv(table) : json_text(table.to_json()));
  return table.all_match() ? kPass : kMismatch;
}

int cmd_census(const Config& c) {
  const auto lie = algebra_of(c);
  if (c.p <= 2 || !is_prime(c.p)) throw ConfigError(std::to_string(c.p) + " is not an odd prime");
  if (power_of(c.p, lie.dim()) > c.bound) throw ConfigError("census exceeds the bound");
  const auto census = level_one_census(lie, c.p, c.threads);
  emit(c, c.format == "csv" ? census.to_csv() : json_text(census.to_json()));
  return kPass;
}

int cmd_zeta_sl3(const Config& c) {
  const Int q = c.p;
  const bool feasible = power_of(q, 8) <= c.bound;
  const auto table = sl3_table(q, feasible, c.threads, c.bound);
  const auto check = check_closed_form(table, c.m);
  const auto closed = zeta_closed_form(q, c.m);
  const auto coeffs = dirichlet_expand(closed, c.terms);

  // t^k of zeta is q^(8m - 2k) times t^k of P; enumeration certifies P term by term
  std::optional<PoincareTruncation> enumerated;
  if (feasible) {
    EnumerationOptions opts;
    opts.threads = c.threads;
    opts.bound = c.bound;
    enumerated = poincare_enumerate(LieLattice::sl(3), q, c.terms, opts);
  }
  const auto p_coeffs = dirichlet_expand(poincare_from_shadow_data(table.shadow_data(), q), c.terms);
  bool consistent = check.identity && table.all_match();
  json rows = json::array();
  std::ostringstream csv;
  csv << "k,coefficient,provenance\n";
  for (int k = 0; k <= c.terms; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    Provenance prov = Provenance::FORMULA_ONLY;
    if (k == 0) {
      prov = Provenance::POLY;
    } else if (enumerated) {
      const auto ep = enumerated->provenance[uk];
      if (ep == Provenance::ORACLE || ep == Provenance::CERT_ZERO) {
        prov = ep;
        if (Rational(enumerated->coeffs[uk]) != p_coeffs[uk]) consistent = false;
      }
    }
    rows.push_back({{"k", k}, {"coefficient", to_json(coeffs[uk])}, {"provenance", to_string(prov)}});
    csv << k << ',' << to_string(coeffs[uk]) << ',' << to_string(prov) << '\n';
  }
  json j{{"algebra", "sl3"},
         {"q", q},
         {"m", c.m},
         {"zeta", to_json(closed)},
         {"closedFormCheck", check.to_json()},
         {"expansion", rows},
         {"consistent", consistent}};
  if (enumerated) j["enumerated"] = enumerated->to_json();
  emit(c, c.format == "csv" ? csv.str() : json_text(j));
  return consistent ? kPass : kMismatch;
}

int cmd_zeta_sl2(const Config& c) {
  EnumerationOptions opts;
  opts.threads = c.threads;
  opts.bound = c.bound;
  opts.seed = c.seed;
  const auto run = sl2_pipeline(c.p, c.m, opts);
  const bool ok = run.closed_form_matches && run.truncation_matches;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "k,enumerated,formula\n";
    for (std::size_t k = 0; k < run.formula_truncation.size(); ++k)
      os << k << ',' << (k < run.enumerated.coeffs.size() ? run.enumerated.coeffs[k].str() : "") << ','
         << to_string(run.formula_truncation[k]) << '\n';
    emit(c, os.str());
  } else {
    auto j = run.to_json();
    const auto q = std::to_string(c.p);
    j["display"] = q + "^" + std::to_string(3 * c.m) + " (1 - " + q + "^(-2-s)) / (1 - " + q + "^(1-s))";
    emit(c, json_text(j));
  }
  return ok ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjoint orbits, shadows and zeta functions over Z/p^r"};
  app.require_subcommand(1);
  Config c;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--algebra", c.algebra)->check(CLI::IsMember({"sl2", "sl3"}));
    sub->add_option("--p,--q", c.p, "residue characteristic");
    sub->add_option("--bound", c.bound, "largest enumeration size");
    sub->add_option("--threads", c.threads)->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "write the report here instead of stdout");
    sub->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  };

  std::string target;
  auto* verify = app.add_subcommand("verify", "run a verifier; exit 1 on any failed instance");
  verify->add_option("target", target)->required()->check(CLI::IsMember({"thmA", "thmB", "thmD", "nlifts", "exp", "shadows"}));
  common(verify);
  verify->add_option("--r", c.r, "level");
  verify->add_option("--seed", c.seed);
  verify->add_option("--samples", c.samples, "gl3 samples for the exp suite");

  bool no_oracle = false;
  auto* table = app.add_subcommand("table", "sl3 overview table");
  common(table);
  table->add_flag("--no-oracle", no_oracle, "polynomial values only");

  auto* census = app.add_subcommand("census", "level-one commutator rank census");
  common(census);

  auto* zeta = app.add_subcommand("zeta", "representation zeta function");
  common(zeta);
  zeta->add_option("--m", c.m)->check(CLI::PositiveNumber);
  zeta->add_option("--terms", c.terms)->check(CLI::NonNegativeNumber);
  zeta->add_option("--seed", c.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfig;
  }

  try {
    if (*verify) return cmd_verify(c, target);
    if (*table) return cmd_table(c, !no_oracle);
    if (*census) return cmd_census(c);
    if (*zeta) {
      if (zeta->count("--algebra") == 0) c.algebra = "sl3";
      return c.algebra == "sl3" ? cmd_zeta_sl3(c) : cmd_zeta_sl2(c);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const ContractError& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return kMismatch;
  }
  return kConfig;
}
