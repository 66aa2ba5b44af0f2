#include "sisres/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "sisres/report.hpp"

namespace sisres {

namespace {

// "@path" reads the expression from a file; blank lines and '#' comments are skipped.
std::string expand(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + arg.substr(1));
  std::string line, text;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    text += line;
  }
  return text;
}

struct Flags {
  std::string mode = "min";
  bool rates = false;
  bool polar = false;
  std::string format = "json";
  unsigned long seed = 1;
  int samples = 5;
  std::string out_path;
};

void add_common(CLI::App* c, Flags& f) {
  c->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "dot"}));
  c->add_option("--seed", f.seed, "random seed");
  c->add_option("--out", f.out_path, "write the result here instead of stdout");
}

RunOptions run_options(const Flags& f) {
  RunOptions o;
  o.mode = f.mode == "inner" ? GraphMode::Inner : GraphMode::Min;
  o.rates = f.rates;
  o.partials = f.polar;
  o.seed = f.seed;
  o.samples = f.samples;
  return o;
}

std::string render(const GraphDocument& d, const std::string& format) {
  return format == "dot" ? to_dot(d) : to_json(d);
}

std::string render(const Json& j, const std::string& format) {
  if (format == "dot") fail(ErrorKind::InvalidArgument, "this command only produces json");
  return j.dump(2) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resolution graphs and inner rates of superisolated surface singularities", "sisres"};
  app.require_subcommand(1);
  Flags f;
  std::vector<std::string> inputs;

  auto* germ = app.add_subcommand("resolve-germ", "resolve a plane curve germ h(v, w)");
  germ->add_option("germ", inputs, "germ equation or @file")->required()->expected(1);
  germ->add_flag("--rates", f.rates, "attach inner rates at the nodes");
  add_common(germ, f);

  auto* sis = app.add_subcommand("sis-graph", "dual graph of F = f_d + f_{d+1}");
  sis->add_option("F", inputs, "surface equation or @file")->required()->expected(1);
  sis->add_option("--mode", f.mode, "min or inner")->check(CLI::IsMember({"min", "inner"}));
  sis->add_flag("--rates", f.rates, "attach inner rates");
  sis->add_flag("--polar", f.polar, "attach x, y, z, Fx, Fy, Fz multiplicities");
  add_common(sis, f);

  auto* rates = app.add_subcommand("inner-rates", "inner graph with rates (sis-graph --mode inner --rates)");
  rates->add_option("F", inputs, "surface equation or @file")->required()->expected(1);
  rates->add_option("--mode", f.mode, "min or inner")->check(CLI::IsMember({"min", "inner"}));
  rates->add_flag("--polar", f.polar, "attach x, y, z, Fx, Fy, Fz multiplicities");
  add_common(rates, f);

  auto* polar = app.add_subcommand("polar", "generic polar curve on the inner graph");
  polar->add_option("F", inputs, "surface equation or @file")->required()->expected(1);
  polar->add_option("--samples", f.samples, "polar samples")->check(CLI::Range(3, 1000));
  add_common(polar, f);

  auto* cmp = app.add_subcommand("compare", "inner equivalence, optionally with polar evidence");
  cmp->add_option("F", inputs, "two surface equations or @files")->required()->expected(2);
  cmp->add_flag("--polar", f.polar, "compare generic polar data too");
  cmp->add_option("--samples", f.samples, "polar samples")->check(CLI::Range(3, 1000));
  add_common(cmp, f);

  auto* check = app.add_subcommand("check", "validate a presentation");
  check->add_option("F", inputs, "surface equation or @file")->required()->expected(1);
  add_common(check, f);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto& s : inputs) s = expand(s);
    std::string text;
    if (germ->parsed()) {
      text = render(germ_document(inputs[0], f.rates, f.seed), f.format);
    } else if (sis->parsed()) {
      text = render(sis_document(inputs[0], run_options(f)), f.format);
    } else if (rates->parsed()) {
      if (rates->count("--mode") == 0) f.mode = "inner";
      f.rates = true;
      text = render(sis_document(inputs[0], run_options(f)), f.format);
    } else if (polar->parsed()) {
      text = render(polar_document(inputs[0], run_options(f)), f.format);
    } else if (cmp->parsed()) {
      text = render(compare_report(inputs[0], inputs[1], f.polar, run_options(f)), f.format);
    } else if (check->parsed()) {
      text = render(check_report(inputs[0]), f.format);
    }
    if (f.out_path.empty()) {
      out << text;
    } else {
      std::ofstream o(f.out_path, std::ios::binary);
      if (!o) fail(ErrorKind::InvalidArgument, "cannot write " + f.out_path);
      o << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "sisres: " << e.what() << "\n";
    return is_usage_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "sisres: internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sisres
