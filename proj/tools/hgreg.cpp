// hgreg: command-line front end. Exit status 0 when every check passes, 2 when
// a verification fails or a computation cannot finish, 1 on usage errors.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hgreg/report/verify.hpp"

using namespace hgreg;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw UsageError("not an integer: " + item);
    } catch (const std::logic_error&) {
      throw UsageError("not an integer: " + item);
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

Complex parse_complex(const std::string& re, const std::string& im) {
  return Complex(parse_real(re), im.empty() ? Real(0) : parse_real(im));
}

// "m:e,m:e,..." with repeated m merged: 4:3,4:3 is eta(4z)^6.
std::vector<std::pair<long, long>> parse_eta_factors(const std::string& s) {
  std::map<long, long> merged;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("eta factor must read m:e, got " + item);
    merged[std::stol(item.substr(0, colon))] += std::stol(item.substr(colon + 1));
  }
  return {merged.begin(), merged.end()};
}

// Descriptor documents: {"type":"quartic","alpha":"2"} or
// {"type":"eta","factors":[[4,6]],"weight":3,"level":16}.
struct SeriesDescriptor {
  std::optional<Rational> alpha;
  std::optional<EtaProductSpec> eta;

  std::string label() const { return alpha ? "quartic alpha=" + alpha->str() : "eta " + eta->to_string(); }
};

SeriesDescriptor parse_descriptor(const json& j) {
  SeriesDescriptor d;
  const std::string type = j.at("type").get<std::string>();
  if (type == "quartic") {
    d.alpha = parse_rational(j.at("alpha").is_string() ? j.at("alpha").get<std::string>() : j.at("alpha").dump());
  } else if (type == "eta") {
    EtaProductSpec spec;
    for (const auto& f : j.at("factors")) spec.factors.emplace_back(f.at(0).get<long>(), f.at(1).get<long>());
    spec.level = j.at("level").get<long>();
    spec.validate();
    if (j.contains("weight") && j["weight"].get<int>() != spec.weight())
      throw UsageError("declared weight does not match the eta exponents");
    d.eta = spec;
  } else {
    throw UsageError("descriptor type must be quartic or eta");
  }
  return d;
}

struct Globals {
  std::string format = "md";
  std::string out;
  std::uint64_t seed = 1;
  unsigned precision = 0;
  std::string config;
  SuiteOptions suite;
  std::string cache_dir;
};

void load_config(Globals& g) {
  if (g.config.empty()) return;
  std::ifstream f(g.config);
  if (!f) throw UsageError("cannot read config " + g.config);
  json j = json::parse(f, nullptr, true, true);
  if (j.contains("precision") && g.precision == 0) g.precision = j["precision"].get<unsigned>();
  if (j.contains("seed")) g.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tolerances"))
    for (const auto& [k, v] : j["tolerances"].items()) g.suite.tolerance_overrides[k] = v.get<double>();
  if (j.contains("coefficient_cache")) g.cache_dir = j["coefficient_cache"].get<std::string>();
}

unsigned resolve_precision(const Globals& g) {
  if (g.precision) return g.precision;
  if (const char* env = std::getenv("HGREG_PRECISION")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw UsageError("HGREG_PRECISION must be a positive integer");
    }
  }
  return 40;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot write " + g.out);
  f << text;
}

int emit_reports(const Globals& g, const std::vector<VerificationReport>& reports) {
  emit(g, render(reports, parse_report_format(g.format)));
  return all_pass(reports) ? 0 : 2;
}

json eval_json(const EvalResult& r) {
  return {{"re", to_string(r.value.re)},
          {"im", to_string(r.value.im)},
          {"error_estimate", to_string(r.error_estimate, 3)},
          {"method", to_string(r.method)},
          {"branch", r.branch_note},
          {"precision", working_digits()}};
}

LSeries build_lseries(const SeriesDescriptor& d, const Globals& g, json& info) {
  FinalizedLSeries f;
  if (d.alpha) {
    f = quartic_lseries(*d.alpha);
  } else {
    f = eta_lseries(*d.eta);
  }
  info["conductor"] = f.L.N;
  info["sign"] = f.L.w;
  info["search_residual"] = to_string(f.search.residual, 3);
  if (!g.cache_dir.empty()) {
    std::string path = g.cache_dir + "/" + std::to_string(std::hash<std::string>{}(d.label())) + ".csv";
    auto cached = load_coefficients(path, d.label());
    if (cached && cached->size() >= f.L.a.size() &&
        std::equal(f.L.a.begin(), f.L.a.end(), cached->begin()))
      info["cache"] = "hit " + path;
    else {
      save_coefficients(path, d.label(), f.L.a);
      info["cache"] = "written " + path;
    }
  }
  return f.L;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regulators of hypergeometric fibrations: evaluation and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "md, csv or json")->check(CLI::IsMember({"md", "csv", "json"}));
  app.add_option("--out", g.out, "write the report to a file");
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_option("--precision", g.precision, "decimal digits (default $HGREG_PRECISION, else 40)");
  app.add_option("--config", g.config, "JSON file with precision, seed, tolerances, coefficient_cache");

  // eval-F
  auto* evalF = app.add_subcommand("eval-F", "evaluate F_a(t)");
  std::string a_list, t_re, t_im, method = "auto";
  evalF->add_option("--a", a_list, "parameters, e.g. 1/2,1/2")->required();
  evalF->add_option("--t", t_re, "argument (real part)")->required();
  evalF->add_option("--t-im", t_im, "imaginary part of the argument");
  evalF->add_option("--method", method, "auto, series, ode or connection")
      ->check(CLI::IsMember({"auto", "series", "ode", "connection"}));

  auto* table = app.add_subcommand("table-ec", "the twelve elliptic regulator rows");

  auto* k3 = app.add_subcommand("verify-k3", "K3 identities at alpha = 4, 64 or 1");
  long k3_alpha = 4;
  k3->add_option("--alpha", k3_alpha)->required()->check(CLI::IsMember({4, 64, 1}));

  auto* periods = app.add_subcommand("periods", "torus period against the hypergeometric closed form");
  std::string p_n, p_i, p_t = "1/5", p_t_im;
  unsigned p_r = 0;
  periods->add_option("--n", p_n)->required();
  periods->add_option("--i", p_i)->required();
  periods->add_option("--t", p_t);
  periods->add_option("--t-im", p_t_im);
  periods->add_option("--r", p_r, "derivative order of the form");

  auto* mono = app.add_subcommand("monodromy", "local monodromies and their relations");
  std::string m_a, m_alpha = "1/4";
  mono->add_option("--a", m_a)->required();
  mono->add_option("--alpha", m_alpha);

  auto* res = app.add_subcommand("resolve", "run the blow-up resolution on chart shapes");
  std::string r_n, r_trace;
  std::size_t r_limit = 1'000'000;
  res->add_option("--n", r_n)->required();
  res->add_option("--trace", r_trace, "write the JSON-lines trace here");
  res->add_option("--step-limit", r_limit);

  auto* lval = app.add_subcommand("lvalue", "L-function value from a descriptor");
  std::string l_eta, l_alpha, l_desc, l_at = "0";
  int l_weight = 0, l_order = 1;
  long l_level = 0;
  lval->add_option("--eta", l_eta, "eta factors m:e,...");
  lval->add_option("--weight", l_weight);
  lval->add_option("--level", l_level);
  lval->add_option("--quartic", l_alpha, "alpha of the quartic curve");
  lval->add_option("--descriptor", l_desc, "JSON descriptor");
  lval->add_option("--order", l_order, "0 for L(s), 1 for L'(s)")->check(CLI::IsMember({0, 1}));
  lval->add_option("--at", l_at, "point s");

  auto* dlog = app.add_subcommand("dlog-check", "dlog identity of higher Ross symbols");
  std::string d_n, d_m, d_cover;
  std::size_t d_samples = 100;
  bool d_classical = false;
  dlog->add_option("--n", d_n);
  dlog->add_option("--m", d_m);
  dlog->add_option("--samples", d_samples);
  dlog->add_flag("--ross-classical", d_classical, "compare with the classical symbol on the plane");
  dlog->add_option("--covering", d_cover, "K3-lem, shioda-inose-1, shioda-inose-2 or eta-differential");

  auto* all = app.add_subcommand("verify-all", "every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    load_config(g);
    g.suite.seed = g.seed;
    WorkingPrecision wp(resolve_precision(g));

    if (*evalF) {
      HGParams params = HGParams::parse(a_list);
      Complex t = parse_complex(t_re, t_im);
      json j{{"a", a_list}, {"t", to_string(t)}};
      EvalResult r;
      if (method == "series") {
        r = calF_series(params, t);
      } else if (method == "ode") {
        r = calF_ode(params, t);
      } else if (method == "connection") {
        r = calF_connection(params, t);
      } else {
        r = calF(params, t);
        // large arguments are cross-checked against the connection formula
        if (abs(t) > Real(95) / 100 && abs(t) > 1) {
          try {
            Real gap = abs(calF_connection(params, t).value - r.value);
            j["connection_gap"] = to_string(gap, 3);
          } catch (const Error& e) {
            j["connection_gap"] = std::string("unavailable: ") + e.what();
          }
        }
      }
      j["result"] = eval_json(r);
      emit(g, j.dump(2) + "\n");
      return 0;
    }
    if (*table) return emit_reports(g, verify_ec_table(g.suite));
    if (*k3) return emit_reports(g, verify_k3(k3_alpha, g.suite));
    if (*periods)
      return emit_reports(g, {verify_periods(parse_longs(p_n), parse_longs(p_i), parse_complex(p_t, p_t_im), p_r,
                                             g.suite)});
    if (*mono) return emit_reports(g, {verify_monodromy(HGParams::parse(m_a), parse_complex(m_alpha, ""), g.suite)});
    if (*res) {
      auto n = parse_longs(r_n);
      ResolveResult rr = resolve(n, r_limit);
      if (!r_trace.empty()) {
        std::ofstream f(r_trace);
        if (!f) throw UsageError("cannot write " + r_trace);
        f << rr.trace_jsonl();
      }
      return emit_reports(g, {verify_resolution(n)});
    }
    if (*lval) {
      SeriesDescriptor d;
      int given = !l_eta.empty() + !l_alpha.empty() + !l_desc.empty();
      if (given != 1) throw UsageError("give exactly one of --eta, --quartic, --descriptor");
      if (!l_desc.empty()) {
        d = parse_descriptor(json::parse(l_desc));
      } else if (!l_alpha.empty()) {
        d.alpha = parse_rational(l_alpha);
      } else {
        EtaProductSpec spec{parse_eta_factors(l_eta), l_level, {}};
        if (l_level <= 0) throw UsageError("--eta needs --level");
        spec.validate();
        if (l_weight && l_weight != spec.weight()) throw UsageError("--weight does not match the eta exponents");
        d.eta = spec;
      }
      json info{{"series", d.label()}};
      LSeries L = build_lseries(d, g, info);
      Complex s = parse_complex(l_at, "");
      Real value;
      if (l_order == 1) {
        if (s != Complex()) throw UsageError("derivatives are available at s = 0 only");
        value = lprime_at_0(L);
      } else {
        if (s.re <= 0) throw UsageError("L(s) is evaluated for s > 0");
        Complex lam = lambda_completed(L, s);
        value = (lam / (exp(s * log(Complex(L.A()))) * gamma(s))).re;
      }
      info["order"] = l_order;
      info["at"] = l_at;
      info["value"] = to_string(value);
      info["precision"] = working_digits();
      emit(g, info.dump(2) + "\n");
      return 0;
    }
    if (*dlog) {
      std::vector<VerificationReport> reports;
      if (!d_cover.empty()) reports.push_back(verify_covering(parse_covering_identity(d_cover), g.suite));
      if (d_classical) {
        auto n = d_n.empty() ? std::vector<long>{2, 2} : parse_longs(d_n);
        if (n.size() != 2) throw UsageError("--ross-classical takes two exponents");
        reports.push_back(verify_ross_classical(n[0], n[1], d_samples, g.suite));
      } else if (!d_n.empty()) {
        auto n = parse_longs(d_n);
        auto m = d_m.empty() ? std::vector<long>(n.size(), 1) : parse_longs(d_m);
        reports.push_back(verify_dlog(n, m, d_samples, g.suite));
      }
      if (reports.empty()) throw UsageError("nothing to check: give --n, --ross-classical or --covering");
      return emit_reports(g, reports);
    }
    if (*all) return emit_reports(g, verify_all(g.suite));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool bad_input = e.code() == ErrorCode::invalid_argument || e.code() == ErrorCode::non_integral_exponent ||
                           e.code() == ErrorCode::invalid_center;
    return bad_input ? 1 : 2;
  } catch (const json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
