#include "inet/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "inet/dot.hpp"
#include "inet/dpo.hpp"
#include "inet/text_format.hpp"

namespace inet {

namespace {

struct Failure {
  std::string message;
};

Document load(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Failure{file + ": error: cannot read file"};
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw Failure{format_diagnostic(file, e)};
  }
}

const NetBlock& pick(const Document& doc, const std::string& file, const std::string& name) {
  if (name.empty()) {
    if (doc.nets.empty()) throw Failure{file + ": error: no net block"};
    return doc.nets.front();
  }
  const NetBlock* b = doc.find_net(name);
  if (!b) throw Failure{file + ": error: no net named " + name};
  return *b;
}

Document single(const Document& doc, const std::string& name, NetBlock::Value value) {
  Document out;
  out.symbols = doc.symbols;
  out.nets.push_back({name, std::move(value), {}});
  return out;
}

void write_dot(const std::string& dir, std::size_t step, const Net& net) {
  char file[32];
  std::snprintf(file, sizeof file, "step_%04zu.dot", step);
  std::ofstream o(std::filesystem::path(dir) / file);
  if (!o) throw Failure{dir + ": error: cannot write " + file};
  o << to_dot(net);
}

std::string describe(const Rule& rule, Port left, Port right) {
  return rule.left_symbol + "@" + std::to_string(left) + " >< " + rule.right_symbol + "@" +
         std::to_string(right) + " (rule " + rule.left_symbol + " " + rule.right_symbol + ")";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interaction net toolkit"};
  app.require_subcommand(1);

  std::string file;
  std::string net_name;
  std::size_t max_steps = 1'000'000;
  std::string strategy = "leftmost";
  std::uint64_t seed = 0;
  bool trace = false;
  std::string dot_dir;
  std::string engine = "direct";

  CLI::App* check = app.add_subcommand("check", "Validate every block of a file");
  check->add_option("FILE", file, "Net file")->required();

  CLI::App* reduce = app.add_subcommand("reduce", "Reduce a net to normal form");
  reduce->add_option("FILE", file, "Net file")->required();
  reduce->add_option("--net", net_name, "Net block to reduce (default: the first)");
  reduce->add_option("--max-steps", max_steps, "Step limit");
  reduce->add_option("--strategy", strategy, "Redex choice")->check(CLI::IsMember({"leftmost", "random"}));
  reduce->add_option("--seed", seed, "Seed of the random strategy");
  reduce->add_flag("--trace", trace, "Print every step");
  reduce->add_option("--dot-dir", dot_dir, "Write step_NNNN.dot files here");
  reduce->add_option("--engine", engine, "Reduction engine")->check(CLI::IsMember({"direct", "dpo"}));

  CLI::App* collapse = app.add_subcommand("collapse", "Collapse an AC net to an interaction net");
  collapse->add_option("FILE", file, "Net file")->required();
  collapse->add_option("--net", net_name, "Net block to collapse (default: the first)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    Document doc = load(file);
    if (check->parsed()) {
      out << file << ": ok (" << doc.symbols.entries().size() << " symbols, " << doc.nets.size() << " nets, "
          << doc.rules.size() << " rules)\n";
      return 0;
    }

    const NetBlock& block = pick(doc, file, net_name);
    if (collapse->parsed()) {
      Net result = block.is_ac() ? ex_collapse(std::get<ACNet>(block.net)) : std::get<Net>(block.net);
      out << print(single(doc, block.name, result));
      return 0;
    }

    if (block.is_ac()) throw Failure{file + ": error: net " + block.name + " has cuts, collapse it first"};
    const Net& start = std::get<Net>(block.net);
    RuleSet rules = doc.rule_set();
    if (!dot_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dot_dir, ec);
      if (ec) throw Failure{dot_dir + ": error: " + ec.message()};
      write_dot(dot_dir, 0, start);
    }

    NormalizeResult result;
    if (engine == "dpo") {
      result = normalize_dpo(start, rules, doc.symbols, max_steps,
                             [&](std::size_t n, const Match& m, const Net& now) {
                               if (trace) {
                                 err << "step " << n << ": " << describe(*m.rule, m.pair.left, m.pair.right)
                                     << '\n';
                               }
                               if (!dot_dir.empty()) write_dot(dot_dir, n, now);
                             });
    } else {
      NormalizeOptions options;
      options.strategy = strategy == "random" ? Strategy::Random : Strategy::Leftmost;
      options.seed = seed;
      options.max_steps = max_steps;
      result = normalize(start, rules, options, [&](std::size_t n, const Reducer::Step& s, const Reducer& r) {
        if (trace) err << "step " << n << ": " << describe(*s.rule, s.left, s.right) << '\n';
        if (!dot_dir.empty()) write_dot(dot_dir, n, r.net());
      });
    }
    out << print(single(doc, block.name, result.net));
    err << "steps: " << result.steps << (result.normal_form ? "" : " (step limit reached)") << '\n';
    return 0;
  } catch (const Failure& f) {
    err << f.message << '\n';
    return 1;
  } catch (const Error& e) {
    err << file << ": error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace inet
