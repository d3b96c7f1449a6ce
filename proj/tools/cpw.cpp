// cpw: command-line front end for the partial-wave library.
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cpw/chiral_waves.hpp"
#include "cpw/errors.hpp"
#include "cpw/exotic_channels.hpp"
#include "cpw/intertwiners_chiral.hpp"
#include "cpw/intertwiners_tensor.hpp"
#include "cpw/json_io.hpp"

#ifndef CPW_VERSION
#define CPW_VERSION "0.0.0"
#endif

using namespace cpw;
using io::Json;

namespace {

struct Command {
  CLI::App* app = nullptr;
  std::string name;  // "exotic g"
  std::map<std::string, std::string> opts;
  std::map<std::string, bool> flags;
  std::function<Json(const Command&)> run;

  const std::string& get(const std::string& k) const { return opts.at(k); }
  int integer(const std::string& k) const {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(get(k), &pos);
      if (pos != get(k).size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("--" + k + " expects an integer, got '" + get(k) + "'");
    }
  }
  Rational rational(const std::string& k) const { return parse_rational(get(k)); }
  std::vector<Rational> list(const std::string& k) const {
    std::vector<Rational> out;
    std::stringstream ss(get(k));
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(parse_rational(item));
    return out;
  }
  Json params() const {
    Json p = Json::object();
    for (const auto& [k, v] : opts) p[k] = v;
    for (const auto& [k, v] : flags) p[k] = v ? "true" : "false";
    return p;
  }
};

class Registry {
 public:
  Command& add(CLI::App* parent, const std::string& name, const std::string& desc, const std::string& full) {
    Command& c = cmds_.emplace_back();
    c.app = parent->add_subcommand(name, desc);
    c.app->fallthrough();
    c.app->set_help_flag("--help", "Print this help message and exit");
    c.name = full;
    return c;
  }
  static void opt(Command& c, const std::string& name, const std::string& desc, const std::string& def = "") {
    auto* o = c.app->add_option("--" + name, c.opts[name], desc);
    if (def.empty())
      o->required();
    else
      c.opts[name] = def, o->capture_default_str();
  }
  static void flag(Command& c, const std::string& name, const std::string& desc) {
    c.flags[name] = false;
    c.app->add_flag("--" + name, c.flags[name], desc);
  }
  const Command* selected() const {
    for (const auto& c : cmds_)
      if (c.app->parsed()) return &c;
    return nullptr;
  }

 private:
  std::deque<Command> cmds_;
};

// ---------------------------------------------------------------------------

WaveSpec wave_spec(const Command& c) {
  const int n = c.integer("n");
  auto dims = c.list("dims");
  if (static_cast<int>(dims.size()) != n) throw std::invalid_argument("--dims must list n values");
  return WaveSpec::from_interior(dims, c.list("proj"));
}

Json wave_json(const ChiralWave& w, const Json& params) {
  Json out{{"params", params}, {"prefactor", io::to_json(w.prefactor)}, {"series", io::to_json(w.series)}};
  if (w.series.vars().size() == 1) {
    Json coeffs = Json::array();
    for (int k = 0; k <= w.series.cap(); ++k) coeffs.push_back(to_string(w.series.coeff({k})));
    out["coefficients"] = coeffs;
  }
  return out;
}

Json run_wave(const Command& c) {
  return wave_json(prop1_series(wave_spec(c), c.integer("cap")), c.params());
}

Json run_casimir(const Command& c) {
  const ChiralWave w = prop1_series(wave_spec(c), c.integer("cap"));
  Json res = Json::object();
  bool zero = true;
  for (int which = 1; which <= 3; ++which) {
    const Series r = casimir_residual(w, which, w.series.cap());
    zero = zero && r.is_zero();
    res[std::to_string(which)] = io::to_json(r);
  }
  Json shift = Json::array();
  for (const auto& s : casimir_shift(w)) shift.push_back(to_string(s));
  return {{"params", c.params()}, {"residuals", res}, {"shift", shift}, {"zero", zero}};
}

Json op_table_json(const OpTable& t) {
  Json o = Json::object();
  for (const auto& [pq, v] : t) o["(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")"] = to_string(v);
  return o;
}

Json run_chiral(const Command& c) {
  const int h = c.integer("h");
  const std::string kind = c.get("kind");
  if (kind == "D") return op_table_json(chiral_D(h).coeffs);
  if (kind != "E") throw std::invalid_argument("--kind must be E or D");
  return op_table_json(chiral_E(h, c.rational("d1"), c.rational("d2")).coeffs);
}

Json tensor_json(const TensorIntertwiner& op, const Rational& d1, const Rational& d2) {
  Json ct = Json::object();
  for (const auto& [ij, v] : op.ctable.entries)
    ct["(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")"] = to_string(v);
  return {{"terms", io::keyed_poly(op.terms)},
          {"ctable", ct},
          {"seeded", op.seeded},
          {"pde_zero", verify_intertwining_pde(op, d1, d2).is_zero()}};
}

Json run_tensor(const Command& c) {
  const int kappa = c.integer("kappa"), L = c.integer("L");
  Json out{{"params", c.params()}};
  if (c.get("d1").empty() && c.get("d2").empty()) {
    out["intertwiner"] = tensor_json(assemble_tensor_intertwiner(kappa, L), 0, 0);
    return out;
  }
  const Rational d1 = c.get("d1").empty() ? Rational(0) : c.rational("d1");
  const Rational d2 = c.get("d2").empty() ? Rational(0) : c.rational("d2");
  Json space = Json::array();
  for (const auto& op : solve_intertwiner_space(kappa, L, d1, d2)) space.push_back(tensor_json(op, d1, d2));
  out["space"] = space;
  return out;
}

Json run_reduce(const Command& c) {
  std::ifstream in(c.get("wave"));
  if (!in) throw std::invalid_argument("cannot open wave file: " + c.get("wave"));
  const Json wj = Json::parse(in);
  const Json& p = wj.at("params");
  Command wc;
  for (const char* k : {"n", "dims", "proj", "cap"}) wc.opts[k] = p.at(k).get<std::string>();
  const ChiralWave w = prop1_series(wave_spec(wc), wc.integer("cap"));
  if (!(io::series_from_json(wj.at("series")) == w.series))
    throw ConsistencyError("wave file series does not match its parameters");
  const auto pair = c.list("pair");
  if (pair.size() != 2) throw std::invalid_argument("--pair expects two point labels");
  WaveChannel ch;
  if (pair[0] == 1 && pair[1] == 2)
    ch = WaveChannel::Front;
  else if (pair[0] == w.spec.n - 1 && pair[1] == w.spec.n)
    ch = WaveChannel::Back;
  else
    throw DomainError("reduction pair must be 1,2 or n-1,n");
  const auto r = reduce_wave(w, ch, c.integer("h"));
  Json out{{"params", c.params()}, {"result", io::to_json(r.result)}, {"exact_cap", r.exactCap}};
  out["ratio"] = r.ratio ? Json(to_string(*r.ratio)) : Json(nullptr);
  out["expected"] = r.expected ? wave_json(*r.expected, Json::object()) : Json(nullptr);
  return out;
}

// ---------------------------------------------------------------------------

Json xsum_json(const XSum& s) {
  Json arr = Json::array();
  for (const auto& [m, c] : s.terms()) {
    Json x = Json::object();
    for (const auto& [p, e] : m) x[std::to_string(p.first) + std::to_string(p.second)] = e;
    arr.push_back({{"X", x}, {"coeff", to_string(c)}});
  }
  return arr;
}

Json run_exotic_build(const Command& c) {
  const StructureName n = parse_structure_name(c.get("name"));
  const auto s = build_structure(n);
  Json out{{"params", c.params()},
           {"raw_terms", s.rawTerms},
           {"terms", xsum_json(s.terms)},
           {"antisymmetric_12", s.terms.swap_points(1, 2) == s.terms * Rational(-1)},
           {"antisymmetric_56", s.terms.swap_points(5, 6) == s.terms * Rational(-1)}};
  if (n != StructureName::E6) {
    const auto r = restrict_2d(s);
    out["matches_closed_2d_form"] = (r.exact - closed_form_2d(n)).is_zero();
  }
  return out;
}

Json run_exotic_g(const Command& c) {
  const GSeries g = g_series(c.integer("cap"), parse_g_method(c.get("method")));
  Json out{{"params", c.params()}, {"series", io::to_json(g)}};
  if (c.flags.at("check-biharmonic")) {
    const auto r = verify_g_biharmonic(g);
    out["biharmonic"] = {{"exact_through", r.exactThrough}, {"residual", io::to_json(r.residual)}, {"zero", r.is_zero()}};
  }
  return out;
}

Json run_exotic_coeff(const Command& c) {
  return to_string(channel_coefficient(c.integer("hplus"), c.integer("hminus"), parse_weighting(c.get("structure"))));
}

Json run_exotic_amplitudes(const Command& c) {
  const auto m = pw4_expand(c.integer("h"), c.integer("hprime"), c.integer("cap"));
  Json e = Json::object();
  for (const auto& [k, v] : m.entries) e[to_string(k)] = to_string(v);
  return {{"params", c.params()}, {"entries", e}, {"residual_zero", m.residual_zero()}};
}

Json run_exotic_positivity(const Command& c) {
  const auto rep = positivity_report(parse_exotic_kind(c.get("structure")), c.integer("hmax"), c.integer("kmax"));
  Json blocks = Json::array();
  for (const auto& b : rep.blocks) {
    Json rows = Json::array();
    for (const auto& [hp, hm] : b.rows) rows.push_back({hp, hm});
    blocks.push_back({{"k_plus", to_string(b.kPlus)},
                      {"k_minus", to_string(b.kMinus)},
                      {"projection", to_string(b.projection)},
                      {"rows", rows},
                      {"matrix", io::to_json(b.matrix)},
                      {"inertia", {b.inertia.positive, b.inertia.negative, b.inertia.zero}}});
  }
  Json out{{"params", c.params()}, {"structure", to_string(rep.structure)}, {"hmax", rep.hmax}, {"kmax", rep.kmax},
           {"blocks", blocks}};
  if (!c.get("out").empty()) {
    std::ofstream f(c.get("out"));
    if (!f) throw std::invalid_argument("cannot write " + c.get("out"));
    f << out.dump(2) << "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, rows);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(path.empty() ? "value" : path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render_table(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << "\n";
  return os.str();
}

// Values from an earlier output (its "params") or manifest ("parameters")
// become flags unless given explicitly.
std::vector<std::string> inject_input(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--input" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--input=", 0) == 0) path = args[i].substr(8);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--input", "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw CLI::ValidationError("--input", e.what());
  }
  auto present = [&](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  const bool isReduce = std::find(args.begin(), args.end(), "reduce") != args.end();
  if (isReduce && j.contains("series")) {
    if (!present("--wave")) args.insert(args.end(), {"--wave", path});
    return args;
  }
  const Json* p = j.contains("params") ? &j["params"] : j.contains("parameters") ? &j["parameters"] : nullptr;
  if (!p || !p->is_object()) throw CLI::ValidationError("--input", "no parameters found in " + path);
  for (const auto& [k, v] : p->items()) {
    if (k == "command" || !v.is_string() || present("--" + k)) continue;
    const std::string s = v.get<std::string>();
    if (s == "false") continue;
    if (s == "true")
      args.push_back("--" + k);
    else if (!s.empty())
      args.insert(args.end(), {"--" + k, s});
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact conformal partial waves, intertwiners and exotic six-point structures"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  std::string format = "json", manifestPath, inputPath;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  app.add_option("--manifest", manifestPath, "Write the run manifest here instead of stderr");
  app.add_option("--input", inputPath, "Take parameters from an earlier JSON output or manifest");

  Registry reg;
  using R = Registry;

  auto& wave = reg.add(&app, "wave", "Chiral n-point partial wave as a cross-ratio series", "wave");
  R::opt(wave, "n", "number of points");
  R::opt(wave, "dims", "field dimensions d1,...,dn");
  R::opt(wave, "proj", "interior projections a2,...,a(n-2)", "");
  wave.app->get_option("--proj")->required(false);
  R::opt(wave, "cap", "series order", "4");
  wave.run = run_wave;

  auto& cas = reg.add(&app, "casimir-check", "Residuals of the Casimir equations for a wave", "casimir-check");
  R::opt(cas, "n", "number of points");
  R::opt(cas, "dims", "field dimensions d1,...,dn");
  R::opt(cas, "proj", "interior projections a2,...,a(n-2)", "");
  cas.app->get_option("--proj")->required(false);
  R::opt(cas, "cap", "series order", "4");
  cas.run = run_casimir;

  CLI::App* inter = app.add_subcommand("intertwiner", "Intertwining differential operators");
  inter->require_subcommand(1);
  inter->fallthrough();
  inter->set_help_flag("--help", "Print this help message and exit");
  auto& chiral = reg.add(inter, "chiral", "Chiral operator table", "intertwiner chiral");
  R::opt(chiral, "h", "weight h");
  R::opt(chiral, "d1", "dimension d1", "0");
  R::opt(chiral, "d2", "dimension d2", "0");
  R::opt(chiral, "kind", "E or D", "E");
  chiral.run = run_chiral;
  auto& tensor = reg.add(inter, "tensor", "Tensor operator for twist 2 kappa, spin L", "intertwiner tensor");
  R::opt(tensor, "kappa", "kappa");
  R::opt(tensor, "L", "spin L");
  tensor.opts["d1"] = tensor.opts["d2"] = "";
  tensor.app->add_option("--d1", tensor.opts["d1"], "dimension d1 (solve the full space)");
  tensor.app->add_option("--d2", tensor.opts["d2"], "dimension d2 (solve the full space)");
  tensor.run = run_tensor;

  auto& red = reg.add(&app, "reduce", "Reduce a wave in an outer pair", "reduce");
  red.opts["wave"] = "";
  red.app->add_option("--wave", red.opts["wave"], "wave JSON produced by `wave`")->required();
  R::opt(red, "pair", "1,2 or n-1,n");
  R::opt(red, "h", "weight h");
  red.run = run_reduce;

  CLI::App* ex = app.add_subcommand("exotic", "Exotic six-point structures");
  ex->require_subcommand(1);
  ex->fallthrough();
  ex->set_help_flag("--help", "Print this help message and exit");
  auto& build = reg.add(ex, "build", "Expanded 4D structure", "exotic build");
  R::opt(build, "name", "E6, B or BminusHalfE");
  build.run = run_exotic_build;
  auto& g = reg.add(ex, "g", "Biharmonic completion series g", "exotic g");
  R::opt(g, "cap", "series order");
  R::opt(g, "method", "recursion or closed", "recursion");
  R::flag(g, "check-biharmonic", "also return the biharmonic residual");
  g.run = run_exotic_g;
  auto& coeff = reg.add(ex, "coeff", "Channel coefficient C_B or C_H", "exotic coeff");
  R::opt(coeff, "hplus", "h+");
  R::opt(coeff, "hminus", "h-");
  R::opt(coeff, "structure", "B or H", "B");
  coeff.run = run_exotic_coeff;
  auto& amp = reg.add(ex, "amplitudes", "Four-point expansion coefficients", "exotic amplitudes");
  R::opt(amp, "h", "h");
  R::opt(amp, "hprime", "h'");
  R::opt(amp, "cap", "highest n in k = 3/2 + n");
  amp.run = run_exotic_amplitudes;
  auto& pos = reg.add(ex, "positivity", "Truncated positivity blocks with exact inertia", "exotic positivity");
  R::opt(pos, "structure", "B, H or E (twist-2 part of E)");
  R::opt(pos, "hmax", "helicity cutoff");
  R::opt(pos, "kmax", "k cutoff");
  pos.opts["out"] = "";
  pos.app->add_option("--out", pos.opts["out"], "also write the report here");
  pos.run = run_exotic_positivity;

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = inject_input(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* at = &app;
    for (auto* sub = at; sub;) {
      at = sub;
      auto subs = sub->get_subcommands();
      sub = subs.empty() ? nullptr : subs.front();
    }
    std::cout << at->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const Command* cmd = reg.selected();
  if (!cmd) {
    std::cerr << app.help();
    return 2;
  }
  try {
    const Json result = cmd->run(*cmd);
    const std::string text = format == "table" ? render_table(result) : result.dump(2) + "\n";
    std::cout << text;
    std::string line;
    for (int i = 0; i < argc; ++i) line += (i ? " " : "") + std::string(argv[i]);
    Json params = cmd->params();
    params["command"] = cmd->name;
    const Json manifest{{"command_line", line},
                        {"parameters", params},
                        {"tool_version", CPW_VERSION},
                        {"output_digest", sha256_hex(text)}};
    if (manifestPath.empty()) {
      std::cerr << manifest.dump() << "\n";
    } else {
      std::ofstream f(manifestPath);
      f << manifest.dump(2) << "\n";
    }
    return 0;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
