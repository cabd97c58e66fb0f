// plimit: command-line front end for the partition limit-shape library.
//
// Exit codes: 0 success, 1 verification failure (a JSON record goes to stderr), 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <plimit/biject.hpp>
#include <plimit/curveops.hpp>
#include <plimit/enumerate.hpp>
#include <plimit/identities.hpp>
#include <plimit/sampler.hpp>
#include <plimit/shape.hpp>

using namespace plimit;
using json = nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string partition_text(const Partition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.parts.size(); ++i) s += (i ? "," : "") + std::to_string(p.parts[i]);
  return s;
}

// ---- output tables

using Cell = std::variant<std::string, double, long long>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json extra = json::object();
};

std::string csv_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return fmt(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

json json_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::stod(fmt(*d));
  }
  if (auto i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

void write_table(std::ostream& os, const Table& t, const std::string& format) {
  if (format == "json") {
    json j = t.extra;
    j["command"] = t.command;
    j["columns"] = t.columns;
    j["rows"] = json::array();
    for (const auto& r : t.rows) {
      json row = json::array();
      for (const auto& c : r) row.push_back(json_cell(c));
      j["rows"].push_back(row);
    }
    os << j.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << "\n";
  }
}

struct Output {
  std::string path;
  std::string format = "text";

  void emit(const Table& t) const {
    if (path.empty()) {
      write_table(std::cout, t, format == "text" ? "csv" : format);
      return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    write_table(f, t, format == "text" ? "csv" : format);
  }

  // a single answer: bare value in text mode, a one-row table otherwise
  void emit_scalar(const std::string& command, const std::string& column, const Cell& value) const {
    if (format == "text") {
      std::ostringstream s;
      if (auto str = std::get_if<std::string>(&value)) s << *str << "\n";
      else s << csv_cell(value) << "\n";
      if (path.empty()) std::cout << s.str();
      else {
        std::ofstream f(path);
        if (!f) throw UsageError("cannot open " + path);
        f << s.str();
      }
      return;
    }
    emit(Table{command, {column}, {{value}}});
  }
};

void add_output_flags(CLI::App* sub, Output& out) {
  sub->add_option("--out", out.path, "output file (default: standard output)");
  sub->add_option("--format", out.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
}

std::vector<double> parse_grid(const std::string& text) {
  double a, b, step;
  char c1, c2;
  std::istringstream s(text);
  if (!(s >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) || b < a)
    throw UsageError("grid must look like a:b:step with a <= b and step > 0");
  return linspace_step(a, b, step);
}

ClassSpec class_arg(const std::string& text) {
  try {
    return parse_class(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad --class: ") + e.what());
  }
}

Partition partition_arg(const std::string& text) {
  try {
    return parse_partition(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad partition: ") + e.what());
  }
}

[[noreturn]] void verification_failure(const json& record) {
  json j = record;
  j["status"] = "FAIL";
  std::cerr << j.dump() << "\n";
  std::exit(1);
}

// ---- named bijections

struct NamedBijection {
  ClassSpec domain, codomain;
  std::function<Partition(const Partition&)> forward, backward;
};

NamedBijection named_bijection(const std::string& name, int r, int m, part_t k) {
  if (name == "glaisher") return {ClassSpec::distinct(), ClassSpec::odd(), glaisher, glaisher_inv};
  if (name == "ohara")
    return {ClassSpec::distinct(), ClassSpec::odd(),
            [](const Partition& p) {
              if (!member(ClassSpec::distinct(), p)) throw std::domain_error("ohara: " + to_string(p) + " is not distinct");
              return from_multiplicities(ohara_fixpoint(to_multiplicities(p)));
            },
            glaisher_inv};
  if (name == "stanton")
    return {ClassSpec::stanton_a(r, m), ClassSpec::stanton_b(r, m),
            [r, m](const Partition& p) { return stanton(r, m, p); },
            [r, m](const Partition& p) { return stanton_inv(r, m, p); }};
  if (name == "rthdiff")
    return {ClassSpec::parts_in(PartSizeSet::binomial(r)), ClassSpec::convex(r),
            [r](const Partition& p) {
              if (!member(ClassSpec::parts_in(PartSizeSet::binomial(r)), p))
                throw std::domain_error("rthdiff: parts must be binomial sizes");
              return rth_diff_forward(r, to_multiplicities(p));
            },
            [r](const Partition& p) { return from_multiplicities(rth_diff_inverse(r, p)); }};
  if (name == "hooks") return {ClassSpec::self_conjugate(), ClassSpec::odd_distinct(), hooks_forward, hooks_inverse};
  if (name == "evenparts") {
    const part_t M = detail::ipow(m, r);
    return {ClassSpec::even_bounded_largest(k, M), ClassSpec::even_bounded_count(k, M),
            [m, r, k](const Partition& p) { return even_parts_generalized(m, r, k, p); },
            [m, r, k](const Partition& p) { return even_parts_generalized_inv(m, r, k, p); }};
  }
  throw UsageError("unknown bijection: " + name);
}

// ---- shapes

std::function<double(double)> named_shape(const std::string& name, double r, double B, double a, int d, double b,
                                          double m, int l, int k) {
  if (name == "phi") return Phi;
  if (name == "psi") return Psi;
  if (name == "general") return [=](double t) { return phi_rBa(t, r, B, a); };
  if (name == "odd-distinct") return odd_distinct_shape;
  if (name == "romik-a") return romik_A;
  if (name == "romik-b") return romik_B;
  if (name == "convex") return convex_inverse;
  if (name == "rth") return [=](double t) { return rth_inverse(t, static_cast<int>(r)); };
  if (name == "lebesgue") return lebesgue_m;
  if (name == "lebesgue-inv") return lebesgue_m_inv;
  if (name == "lebesgue-general") return [=](double t) { return lebesgue_general(l, k, t); };
  if (name == "diffd") return [=](double t) { return diffd_inverse(d, t); };
  if (name == "bounded-f" || name == "bounded-g") {
    const auto s = bounded_shapes(m, r, b);
    if (name == "bounded-f") return [s](double t) { return s.F(t); };
    return [s](double t) { return s.G(t); };
  }
  throw UsageError("unknown shape: " + name);
}

Table constants_table() {
  Table t{"constants", {"name", "value"}, {}};
  auto add = [&](std::string n, double v) { t.rows.push_back({n, v}); };
  add("d(1,1)", const_d(1, 1));
  add("d(1,1,2)", const_d(1, 1, 2));
  add("d(2,1/2)", const_d(2, 0.5));
  add("convex_constant", convex_constant());
  add("parts_constant", parts_constant());
  add("durfee_constant", durfee_constant());
  add("quintic_root", lebesgue_quintic_root());
  add("durfee_from_quintic", durfee_from_quintic(lebesgue_quintic_root()));
  add("lebesgue_eta0", lebesgue_eta0());
  add("lebesgue_s0", lebesgue_s0());
  add("lebesgue_x0", lebesgue_x0());
  add("selfconjugate_x0", selfconjugate_x0());
  add("romik_c(1)", romik_c(1));
  for (int d = 1; d <= 3; ++d) {
    const auto c = diffd_constants(d);
    const std::string s = "diffd(" + std::to_string(d) + ")";
    add(s + ".y", c.y_d);
    add(s + ".gamma", c.gamma);
    add(s + ".w", c.w);
    add(s + ".c", c.c);
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit shapes of restricted integer partitions"};
  app.require_subcommand(1);
  Output out;

  std::string cls_text, name, grid_text, apply_text, codomain_text;
  part_t n = -1, nmax = -1, id_nmax = 40, k = 2;
  std::uint64_t seed = kDefaultSeed;
  std::size_t replicas = 1;
  std::string mode = "plain";
  int r = 1, m = 2, d = 1, l = 1, lk = 2;
  double rr = 1, B = 1, a = kInf, b = 1, mm = 2;
  bool verify = false, inverse_dir = false;

  auto mode_check = CLI::IsMember({"plain", "pdc"});

  auto* count_cmd = app.add_subcommand("count", "number of partitions of n in a class");
  count_cmd->add_option("--class", cls_text)->required();
  auto* count_n = count_cmd->add_option("--n", n, "single size");
  auto* count_nmax = count_cmd->add_option("--nmax", nmax, "table for 0..nmax");
  count_n->excludes(count_nmax);
  add_output_flags(count_cmd, out);

  auto* enum_cmd = app.add_subcommand("enumerate", "list the partitions of n in a class");
  enum_cmd->add_option("--class", cls_text)->required();
  enum_cmd->add_option("--n", n)->required();
  add_output_flags(enum_cmd, out);

  auto* sample_cmd = app.add_subcommand("sample", "exact uniform samples");
  sample_cmd->add_option("--class", cls_text)->required();
  sample_cmd->add_option("--n", n)->required();
  sample_cmd->add_option("--mode", mode)->check(mode_check);
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("--replicas", replicas, "number of samples");
  add_output_flags(sample_cmd, out);

  auto* conv_cmd = app.add_subcommand("converge", "scaled diagrams of exact samples against the limit shape");
  conv_cmd->add_option("--class", cls_text)->required();
  conv_cmd->add_option("--n", n)->required();
  conv_cmd->add_option("--mode", mode)->check(mode_check);
  conv_cmd->add_option("--seed", seed);
  conv_cmd->add_option("--replicas", replicas)->default_val(200);
  conv_cmd->add_option("--grid", grid_text)->default_val("0.1:3:0.1");
  add_output_flags(conv_cmd, out);

  auto* bij_cmd = app.add_subcommand("bijection", "apply or verify a named bijection");
  bij_cmd->add_option("--name", name)->required()->check(
      CLI::IsMember({"glaisher", "ohara", "stanton", "rthdiff", "hooks", "evenparts"}));
  bij_cmd->add_option("--r", r)->default_val(1);
  bij_cmd->add_option("--m", m)->default_val(2);
  bij_cmd->add_option("--k", k)->default_val(2);
  auto* bij_apply = bij_cmd->add_option("--apply", apply_text, "partition such as 6,3,1");
  auto* bij_verify = bij_cmd->add_flag("--verify", verify, "exhaustive check for n <= nmax");
  bij_cmd->add_flag("--inverse", inverse_dir, "apply the inverse map");
  bij_cmd->add_option("--nmax", nmax);
  bij_cmd->add_option("--codomain", codomain_text, "check against this class instead of the registered codomain");
  bij_apply->excludes(bij_verify);
  add_output_flags(bij_cmd, out);

  auto* shape_cmd = app.add_subcommand("shape", "evaluate a limit-shape curve on a grid");
  shape_cmd->add_option("--name", name)->required()->check(
      CLI::IsMember({"phi", "psi", "general", "odd-distinct", "romik-a", "romik-b", "convex", "rth", "lebesgue",
                     "lebesgue-inv", "lebesgue-general", "diffd", "bounded-f", "bounded-g"}));
  shape_cmd->add_option("--grid", grid_text)->default_val("0.1:3:0.1");
  shape_cmd->add_option("--r", rr);
  shape_cmd->add_option("--B", B);
  shape_cmd->add_option("--a", a);
  shape_cmd->add_option("--d", d);
  shape_cmd->add_option("--b", b);
  shape_cmd->add_option("--m", mm);
  shape_cmd->add_option("--l", l);
  shape_cmd->add_option("--k", lk);
  add_output_flags(shape_cmd, out);

  auto* const_cmd = app.add_subcommand("constants", "table of constants");
  add_output_flags(const_cmd, out);

  auto* pipe_cmd = app.add_subcommand("pipeline", "curve-transformation pipelines");
  pipe_cmd->add_option("--name", name)->required()->check(CLI::IsMember({"selfconjugate", "glaisher", "lebesgue"}));
  pipe_cmd->add_option("--grid", grid_text)->default_val("0.05:4:0.05");
  add_output_flags(pipe_cmd, out);

  auto* id_cmd = app.add_subcommand("identities", "equinumerosity checks by exact counting");
  id_cmd->add_option("--nmax", id_nmax);
  add_output_flags(id_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*count_cmd) {
      const auto c = class_arg(cls_text);
      if (n < 0 && nmax < 0) throw UsageError("count needs --n or --nmax");
      if (n >= 0) {
        out.emit_scalar("count", "count", count(c, n).str());
      } else {
        Table t{"count", {"n", "count"}, {}};
        const auto tab = count_table(c, nmax);
        for (part_t i = 0; i <= nmax; ++i) t.rows.push_back({static_cast<long long>(i), tab[static_cast<std::size_t>(i)].str()});
        out.emit(t);
      }
    } else if (*enum_cmd) {
      if (n < 0) throw UsageError("--n must be nonnegative");
      Table t{"enumerate", {"partition"}, {}};
      for (const auto& p : enumerate_all(class_arg(cls_text), n)) t.rows.push_back({partition_text(p)});
      out.emit(t);
    } else if (*sample_cmd) {
      SamplerConfig cfg;
      cfg.cls = class_arg(cls_text);
      cfg.n = n;
      cfg.mode = mode == "pdc" ? SampleMode::Pdc : SampleMode::Plain;
      cfg.seed = seed;
      Table t{"sample", {"replica", "attempts", "partition"}, {}};
      t.extra["seed"] = seed;
      const auto draws = sample_many(cfg, replicas);
      for (std::size_t i = 0; i < draws.size(); ++i)
        t.rows.push_back({static_cast<long long>(i), static_cast<long long>(draws[i].attempts), partition_text(draws[i].partition)});
      out.emit(t);
    } else if (*conv_cmd) {
      SamplerConfig cfg;
      cfg.cls = class_arg(cls_text);
      cfg.n = n;
      cfg.mode = mode == "pdc" ? SampleMode::Pdc : SampleMode::Plain;
      cfg.seed = seed;
      const auto params = shape_params(cfg.cls);
      if (!params) throw UsageError("converge: no limit shape registered for " + cfg.cls.name());
      const auto ref = phi_rB_curve(params->r, params->B, params->a);
      const auto rep = run_convergence(cfg, ref, replicas, parse_grid(grid_text));
      Table t{"converge", {"t", "empirical_mean", "q05", "q95", "theory"}, {}};
      for (std::size_t i = 0; i < rep.grid.size(); ++i)
        t.rows.push_back({rep.grid[i], rep.mean[i], rep.q05[i], rep.q95[i], rep.theory[i]});
      t.extra["seed"] = seed;
      t.extra["replicas"] = replicas;
      t.extra["mean_sup_deviation"] = std::stod(fmt(rep.mean_sup_deviation()));
      t.extra["acceptance_rate"] = std::stod(fmt(rep.acceptance_rate));
      out.emit(t);
    } else if (*bij_cmd) {
      if (name == "rthdiff" && r < 2) r = 2;
      auto bij = named_bijection(name, r, m, k);
      if (!codomain_text.empty()) bij.codomain = class_arg(codomain_text);
      if (!apply_text.empty() || bij_apply->count()) {
        const auto p = partition_arg(apply_text);
        Partition q;
        try {
          q = inverse_dir ? bij.backward(p) : bij.forward(p);
        } catch (const std::domain_error& e) {
          throw UsageError(e.what());
        }
        out.emit_scalar("bijection", "image", partition_text(q));
      } else if (verify) {
        const part_t top = nmax < 0 ? 30 : nmax;
        if (top > 40) throw UsageError("--nmax must be <= 40");
        const auto rows = verify_bijection(bij.forward, bij.backward, bij.domain, bij.codomain, top);
        Table t{"bijection", {"n", "domain", "codomain", "images", "status"}, {}};
        t.extra["name"] = name;
        for (const auto& row : rows)
          t.rows.push_back({static_cast<long long>(row.n), static_cast<long long>(row.domain_count),
                            static_cast<long long>(row.codomain_count), static_cast<long long>(row.distinct_images),
                            std::string(row.pass ? "PASS" : "FAIL")});
        out.emit(t);
        for (const auto& row : rows)
          if (!row.pass)
            verification_failure({{"command", "bijection"}, {"name", name}, {"n", row.n},
                                  {"domain", row.domain_count}, {"codomain", row.codomain_count},
                                  {"images", row.distinct_images}});
      } else {
        throw UsageError("bijection needs --apply or --verify");
      }
    } else if (*shape_cmd) {
      const auto f = named_shape(name, rr, B, a, d, b, mm, l, lk);
      Table t{"shape", {"t", "value"}, {}};
      t.extra["name"] = name;
      for (double x : parse_grid(grid_text)) {
        double v;
        try {
          v = f(x);
        } catch (const std::domain_error&) {
          v = std::nan("");
        }
        t.rows.push_back({x, v});
      }
      out.emit(t);
    } else if (*const_cmd) {
      out.emit(constants_table());
    } else if (*pipe_cmd) {
      const auto res = pipeline(name);
      const auto grid = parse_grid(grid_text);
      auto stage_table = [&](std::size_t i) {
        Table t{"pipeline", {"x", "value"}, {}};
        t.extra["name"] = name;
        t.extra["stage"] = i;
        t.extra["label"] = res.stages[i].label;
        for (double x : grid) t.rows.push_back({x, res.stages[i].curve.value_or_nan(x)});
        return t;
      };
      if (!out.path.empty()) {
        // one file per stage: <stem>_stage<i><ext>
        const auto dot = out.path.find_last_of('.');
        const auto slash = out.path.find_last_of('/');
        const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
        const std::string stem = has_ext ? out.path.substr(0, dot) : out.path;
        const std::string ext = has_ext ? out.path.substr(dot) : (out.format == "json" ? ".json" : ".csv");
        for (std::size_t i = 0; i < res.stages.size(); ++i) {
          Output o{stem + "_stage" + std::to_string(i) + ext, out.format};
          o.emit(stage_table(i));
          std::cout << o.path << "\n";
        }
      } else {
        Table t{"pipeline", {"stage", "label", "x", "value"}, {}};
        t.extra["name"] = name;
        for (std::size_t i = 0; i < res.stages.size(); ++i)
          for (double x : grid)
            t.rows.push_back({static_cast<long long>(i), res.stages[i].label, x, res.stages[i].curve.value_or_nan(x)});
        out.emit(t);
      }
      const double err = res.sup_error();
      if (!(err < 1e-6))
        verification_failure({{"command", "pipeline"}, {"name", name}, {"sup_error", err}});
    } else if (*id_cmd) {
      if (id_nmax < 0 || id_nmax > 60) throw UsageError("--nmax must be in [0, 60]");
      const auto rows = check_identities(id_nmax);
      Table t{"identities", {"pair", "n", "left", "right", "status"}, {}};
      bool ok = true;
      for (const auto& row : rows) {
        t.rows.push_back({row.pair, static_cast<long long>(row.n), row.left.str(), row.right.str(),
                          std::string(row.ok() ? "PASS" : "FAIL")});
        ok = ok && row.ok();
      }
      out.emit(t);
      if (!ok)
        for (const auto& row : rows)
          if (!row.ok())
            verification_failure({{"command", "identities"}, {"pair", row.pair}, {"n", row.n},
                                  {"left", row.left.str()}, {"right", row.right.str()}});
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
