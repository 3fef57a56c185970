#include "brauer/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "brauer/certificate.hpp"
#include "brauer/error.hpp"
#include "brauer/field.hpp"
#include "brauer/normalform.hpp"
#include "brauer/oracle.hpp"
#include "brauer/ortho.hpp"
#include "brauer/strength.hpp"

namespace brauer {

namespace {

const std::vector<std::string> kCommands = {"solve",    "dense-point", "normal-form", "strength",
                                            "nkd",      "regularize",  "verify",      "enumerate"};

std::string trim_copy(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    int x = std::stoi(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::ParseError, "'" + key + "' expects an integer, got '" + v + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Route parse_route(const std::string& r) {
  if (r == "auto") return Route::Auto;
  if (r == "diagonal") return Route::Diagonal;
  if (r == "planes") return Route::Planes;
  fail(ErrorKind::ParseError, "unknown route '" + r + "' (auto, diagonal, planes)");
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::MalformedCertificate: return kExitParse;
    case ErrorKind::BudgetExceeded: return kExitBudget;
    default: return kExitOther;
  }
}

System load_system(const JobSpec& job) {
  if (!job.forms_file.empty()) {
    if (!job.forms.empty()) fail(ErrorKind::ParseError, "give forms inline or by file, not both");
    System sys = parse_system(read_file(job.forms_file));
    if (!job.field.empty() && !FqField::parse(job.field)->same_as(*sys.field))
      fail(ErrorKind::ParseError, "field " + job.field + " differs from the file's " + sys.field->descriptor());
    return sys;
  }
  if (job.field.empty()) fail(ErrorKind::ParseError, "no field given");
  std::string text = "field " + job.field + "\n";
  for (const auto& f : job.forms) text += f + "\n";
  return parse_system(text);
}

// Text report plus the same data as JSON.
struct Report {
  std::vector<std::pair<std::string, std::string>> lines;
  nlohmann::ordered_json json = nlohmann::ordered_json::object();

  void add(const std::string& key, const std::string& value) {
    lines.emplace_back(key, value);
    json[key] = value;
  }
  void add_list(const std::string& key, const std::vector<std::string>& values) {
    for (const auto& v : values) lines.emplace_back(key, v);
    json[key] = values;
  }
  void print(std::ostream& out, bool as_json) const {
    if (as_json) {
      out << json.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : lines) out << k << ": " << v << "\n";
  }
};

std::string budget_line(const JobSpec& job) { return job.budget.to_string(); }

int finish_with_certificate(const JobSpec& job, const Certificate& cert, Report& rep, std::ostream& out,
                            std::ostream& err) {
  const std::string text = cert.serialize();
  VerifyReport vr = verify_certificate_text(text);
  rep.add("certificate", cert.kind);
  rep.add("verified", vr.ok ? "yes" : "no (" + vr.first_failure() + ")");
  if (!job.output.empty()) {
    std::ofstream f(job.output, std::ios::binary);
    if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + job.output + "'");
    f << text;
    rep.add("written", job.output);
  }
  rep.print(out, job.json);
  if (!vr.ok) {
    err << "certificate check failed: " << vr.first_failure() << "\n";
    return kExitVerify;
  }
  return kExitOk;
}

int run_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
  Report rep;
  rep.add("command", job.command);

  if (job.command == "nkd") {
    FieldPtr fp = FqField::parse(job.field);
    require(job.degree >= 1, ErrorKind::InvalidArgument, "nkd needs a degree >= 1");
    rep.add("field", fp->descriptor());
    rep.add("degree", std::to_string(job.degree));
    rep.add("nkd", std::to_string(nkd_exact(*fp, job.degree, job.n_max)));
    rep.print(out, job.json);
    return kExitOk;
  }

  if (job.command == "verify") {
    require(!job.certificate.empty(), ErrorKind::InvalidArgument, "verify needs a certificate path");
    VerifyReport vr = verify_certificate_text(read_file(job.certificate));
    std::vector<std::string> checks;
    for (const auto& [name, ok] : vr.checks) checks.push_back(std::string(ok ? "pass " : "FAIL ") + name);
    rep.add_list("check", checks);
    rep.add("result", vr.ok ? "pass" : "fail");
    if (!vr.ok) rep.add("failed", vr.first_failure());
    rep.print(out, job.json);
    if (!vr.ok) err << "verification failed: " << vr.first_failure() << "\n";
    return vr.ok ? kExitOk : kExitVerify;
  }

  System sys = load_system(job);
  FormTuple ft = FormTuple::sorted(sys.field, sys.nvars, sys.forms);
  const FqField& F = *sys.field;
  rep.add("field", F.descriptor());
  rep.add("nvars", std::to_string(sys.nvars));
  std::vector<std::string> forms;
  for (const auto& f : ft.forms()) forms.push_back(format_infix(f));
  rep.add_list("form", forms);
  rep.add("budget", budget_line(job));
  Rng rng(job.budget.seed);
  auto side_condition = [&]() {
    return parse_form(sys.field, job.g.empty() ? "1" : job.g, sys.nvars);
  };

  if (job.command == "solve") {
    Vec x = brauer_solve(ft, job.budget);
    rep.add("point", format_vec(F, x));
    return finish_with_certificate(job, nonzero_point_certificate(ft, {}, x), rep, out, err);
  }
  if (job.command == "dense-point") {
    Form g = side_condition();
    DensePoint dp = dense_point(ft, g, job.budget, rng, parse_route(job.route));
    rep.add("g", format_infix(g));
    rep.add("point", format_vec(F, dp.chart.point));
    rep.add("chart-params", format_vec(F, dp.chart.params));
    rep.add("chart-visited", std::to_string(dp.visited));
    return finish_with_certificate(job, dense_point_certificate(ft, g, dp, job.budget.seed), rep, out, err);
  }
  if (job.command == "normal-form") {
    Form g = side_condition();
    NormalFormData nf = normal_form(ft, g, job.budget, rng, parse_route(job.route));
    rep.add("dim-W", std::to_string(nf.dim()));
    rep.add("m", std::to_string(nf.m()));
    std::vector<std::string> a, b, h;
    for (int i = 0; i < nf.r(); ++i) {
      a.push_back(F.format(nf.a[i]));
      b.push_back(F.format(nf.b[i]));
      h.push_back(format_infix(nf.h[i]));
    }
    rep.add_list("a", a);
    rep.add_list("b", b);
    rep.add_list("h", h);
    return finish_with_certificate(job, normal_form_certificate(nf, g), rep, out, err);
  }
  if (job.command == "strength") {
    require(ft.size() == 1, ErrorKind::InvalidArgument, "strength takes exactly one form");
    StrengthResult res = strength_exhaustive(ft[0], job.budget);
    rep.add("strength", res.infinite() ? "inf" : std::to_string(res.value));
    rep.add("result", res.exact() ? "exact" : "lower-bound");
    return finish_with_certificate(job, strength_certificate(ft[0], res), rep, out, err);
  }
  if (job.command == "regularize") {
    Phi phi = Phi::parse(job.phi);
    ClosureBound cb = closure_codim_bound(ft, phi, job.budget, rng);
    std::vector<std::string> gs;
    for (const auto& g : cb.reg.g.forms()) gs.push_back(format_infix(g));
    rep.add("phi", phi.text);
    rep.add_list("g", gs);
    rep.add("splits", std::to_string(cb.reg.splits));
    rep.add("codim-bound", std::to_string(cb.bound));
    rep.add("chart", cb.chart ? "yes" : "no");
    return finish_with_certificate(job, closure_certificate(ft, phi, cb), rep, out, err);
  }
  if (job.command == "enumerate") {
    ZeroLocus z = enumerate_zero_locus(ft, job.budget);
    rep.add("count", std::to_string(z.points.size()));
    std::vector<std::string> pts;
    for (const auto& p : z.points) pts.push_back(format_vec(F, p));
    rep.add_list("point", pts);
    rep.print(out, job.json);
    return kExitOk;
  }
  fail(ErrorKind::ParseError, "unknown command '" + job.command + "'");
}

}  // namespace

std::string JobSpec::to_text() const {
  std::string out = "command " + command + "\n";
  if (!field.empty()) out += "field " + field + "\n";
  for (const auto& f : forms) out += "form " + f + "\n";
  if (!forms_file.empty()) out += "file " + forms_file + "\n";
  if (!g.empty()) out += "g " + g + "\n";
  out += "route " + route + "\n";
  out += "degree " + std::to_string(degree) + "\n";
  out += "n-max " + std::to_string(n_max) + "\n";
  out += "phi " + phi + "\n";
  out += "budget " + budget.to_string() + "\n";
  if (!output.empty()) out += "output " + output + "\n";
  if (!certificate.empty()) out += "certificate " + certificate + "\n";
  out += std::string("json ") + (json ? "true" : "false") + "\n";
  out += "threads " + std::to_string(threads) + "\n";
  return out;
}

JobSpec JobSpec::parse_text(std::string_view text) {
  JobSpec job;
  job.budget = Budget::from_env();
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::vector<std::string> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim_copy(raw);
    if (line.empty() || line[0] == '#') continue;
    auto sp = line.find(' ');
    std::string key = line.substr(0, sp);
    std::string value = sp == std::string::npos ? "" : trim_copy(std::string_view(line).substr(sp + 1));
    auto where = "line " + std::to_string(lineno) + ", column " + std::to_string(raw.find(key) + 1) + ": ";
    if (key != "form") {
      if (std::find(seen.begin(), seen.end(), key) != seen.end())
        fail(ErrorKind::ParseError, where + "duplicate key '" + key + "'");
      seen.push_back(key);
    }
    try {
      if (key == "command") job.command = value;
      else if (key == "field") job.field = value;
      else if (key == "form") job.forms.push_back(value);
      else if (key == "file") job.forms_file = value;
      else if (key == "g") job.g = value;
      else if (key == "route") job.route = value;
      else if (key == "degree") job.degree = parse_int(key, value);
      else if (key == "n-max") job.n_max = parse_int(key, value);
      else if (key == "phi") job.phi = value;
      else if (key == "budget") job.budget = Budget::parse(value);
      else if (key == "output") job.output = value;
      else if (key == "certificate") job.certificate = value;
      else if (key == "json") {
        if (value != "true" && value != "false") fail(ErrorKind::ParseError, "json expects true or false");
        job.json = value == "true";
      } else if (key == "threads") job.threads = parse_int(key, value);
      else fail(ErrorKind::ParseError, "unknown key '" + key + "'");
    } catch (const Error& e) {
      fail(ErrorKind::ParseError, where + e.what());
    }
  }
  if (std::find(kCommands.begin(), kCommands.end(), job.command) == kCommands.end())
    fail(ErrorKind::ParseError, "missing or unknown command '" + job.command + "'");
  return job;
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    return run_job(job, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Rational points on systems of forms over finite fields, with certificates"};
  app.require_subcommand(1);
  JobSpec job;
  try {
    job.budget = Budget::from_env();
  } catch (const Error& e) {
    std::cerr << "BRAUER_BUDGET_DEFAULT: " << e.what() << "\n";
    return kExitParse;
  }

  std::vector<std::string> positional;
  std::string budget_text;
  std::string job_file;
  std::optional<int> b_dim, b_depth;
  std::optional<long> b_tries, b_enum, b_strength;
  std::optional<std::uint64_t> seed;

  auto common = [&](CLI::App* sub) {
    sub->add_option("args", positional, "field, then forms (nkd: field degree; verify: certificate)");
    sub->add_option("--field", job.field, "field descriptor, e.g. GF(9)");
    sub->add_option("--form", job.forms, "a form, infix or canonical (repeatable)");
    sub->add_option("--file", job.forms_file, "system file");
    sub->add_option("--g", job.g, "side condition g");
    sub->add_option("--route", job.route, "good-subspace route: auto, diagonal, planes");
    sub->add_option("--phi", job.phi, "regularization threshold, const:K");
    sub->add_option("--n-max", job.n_max, "nkd search ceiling");
    sub->add_option("--budget", budget_text, "dim=N,tries=N,enum=N,strength=N,depth=N,seed=N");
    sub->add_option("--budget-dim", b_dim);
    sub->add_option("--budget-tries", b_tries);
    sub->add_option("--budget-enum", b_enum);
    sub->add_option("--budget-strength", b_strength);
    sub->add_option("--budget-depth", b_depth);
    sub->add_option("--seed", seed);
    sub->add_option("-o,--output", job.output, "certificate output path");
    sub->add_flag("--json", job.json, "JSON report");
    sub->add_option("--threads", job.threads, "thread cap");
  };
  for (const auto& name : kCommands) common(app.add_subcommand(name, "run " + name));
  auto* runsub = app.add_subcommand("run", "run a job file");
  runsub->add_option("job", job_file, "job file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (!job_file.empty()) {
      JobSpec spec = JobSpec::parse_text(read_file(job_file));
      return run(spec, std::cout, std::cerr);
    }
    job.command = app.get_subcommands().front()->get_name();
    if (!budget_text.empty()) job.budget = Budget::parse(budget_text);
    if (b_dim) job.budget.dim = *b_dim;
    if (b_tries) job.budget.tries = *b_tries;
    if (b_enum) job.budget.enum_points = *b_enum;
    if (b_strength) job.budget.strength_nodes = *b_strength;
    if (b_depth) job.budget.max_depth = *b_depth;
    if (seed) job.budget.seed = *seed;

    std::size_t k = 0;
    if (job.command == "verify") {
      if (k < positional.size()) job.certificate = positional[k++];
    } else {
      if (k < positional.size() && job.field.empty()) job.field = positional[k++];
      if (job.command == "nkd" && k < positional.size()) job.degree = parse_int("degree", positional[k++]);
      else
        while (k < positional.size()) job.forms.push_back(positional[k++]);
    }
    if (k < positional.size()) fail(ErrorKind::ParseError, "unexpected argument '" + positional[k] + "'");
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  }
  return run(job, std::cout, std::cerr);
}

}  // namespace brauer
