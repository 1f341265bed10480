// Command-line front end: run a mechanism on a problem file, sweep a
// property, build a partition, or replay the reproduction reports.
//
// Exit codes: 0 success / property holds, 1 property or report fails,
// 2 bad input, 3 infeasible, 4 enumeration bound exceeded, 5 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cex/cex.hpp"

namespace {

using namespace cex;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << text;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad " + what + " '" + s + "'");
    }
  }
  if (out.empty()) throw InvalidInput("empty " + what);
  return out;
}

MechanismId mechanism_from(const std::string& name, const std::string& mu0,
                           const std::string& order) {
  MechanismId id;
  id.tag = parse_mechanism_tag(name);
  id.mu0 = parse_mu0(mu0);
  if (!order.empty()) id.sd_order = parse_int_list(order, "order");
  return id;
}

struct RunArgs {
  std::string problem, mechanism, mu0 = "cyclic", order, format = "text";
  bool certify = false;
};

int cmd_run(const RunArgs& a) {
  const ProblemFile f = parse_problem(read_file(a.problem));
  const MechanismId id = mechanism_from(a.mechanism, a.mu0, a.order);
  if ((id.tag == MechanismTag::Bttc || id.tag == MechanismTag::Ttc) && f.completed)
    throw InvalidInput(std::string(to_string(id.tag)) +
                       " reads the rank of each division's own worker; give full orders");
  const Outcome out = run(id, f.problem);
  const auto& prefs = f.problem.profile();

  json cert;
  if (a.certify) {
    cert["derangement"] = is_derangement(out.assignment);
    cert["pareto_efficient"] = is_pareto_efficient(prefs, out.assignment);
    if (is_derangement(out.assignment))
      cert["ce_efficient"] = is_ce_efficient(prefs, out.assignment);
    if (f.problem.partition() && f.problem.partition()->is_feasible(out.assignment))
      cert["eap_efficient"] = eap_efficient(prefs, *f.problem.partition(), out.assignment);
  }

  if (a.format == "json") {
    json j = tool_header();
    j["mechanism"] = describe(id);
    j["n"] = f.problem.size();
    j["assignment"] = to_json(out.assignment);
    j["trace"] = to_json(out.trace);
    if (a.certify) j["certification"] = cert;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "mechanism: " << describe(id) << "\n";
  std::cout << "assignment: " << out.assignment.str() << "\n";
  for (Division i = 1; i <= f.problem.size(); ++i)
    std::cout << "  " << f.division_name(i) << " -> " << f.worker_name(out.assignment[i]) << "\n";
  std::cout << "trace:\n";
  for (const auto& s : out.trace.steps())
    std::cout << "  " << s.step << "  " << f.division_name(s.chooser) << "  "
              << f.worker_name(s.chosen) << "  " << to_string(s.kind) << "\n";
  if (a.certify) {
    std::cout << "certification:\n";
    for (const auto& [k, v] : cert.items())
      std::cout << "  " << k << ": " << (v.get<bool>() ? "yes" : "no") << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string mechanism, property, scope = "exhaustive", space, mu0 = "cyclic", order,
                                   witness_out, format = "text";
  int n = 0, jobs = 0;
  std::uint64_t count = 10000, seed = 1;
};

ProblemFile witness_file(const MechanismId& id, const Problem& p) {
  ProblemFile f;
  f.problem = p;
  bool own_last = true;
  for (Division i = 1; i <= p.size(); ++i) own_last = own_last && p.profile().order(i).back() == i;
  f.completed = own_last && !reads_own_rank(id.tag);
  return f;
}

int cmd_verify(const VerifyArgs& a) {
  const MechanismId id = mechanism_from(a.mechanism, a.mu0, a.order);
  const Property prop = parse_property(a.property);
  if (a.scope != "exhaustive" && a.scope != "sampled")
    throw InvalidInput("--scope must be exhaustive or sampled");
  Scope scope{a.scope == "exhaustive", a.n, a.count, a.seed};
  SweepOptions opts;
  opts.jobs = a.jobs;
  if (!a.space.empty()) {
    if (a.space == "canonical") opts.space = SpaceKind::Canonical;
    else if (a.space == "full") opts.space = SpaceKind::Full;
    else throw InvalidInput("--space must be canonical or full");
  }
  const PropertyReport r = check_property(prop, id, scope, opts);
  if (r.witness && !a.witness_out.empty()) {
    const std::filesystem::path dir(a.witness_out);
    std::filesystem::create_directories(dir);
    write_file(dir / "problem.json", serialize_problem(witness_file(id, r.witness->problem)));
    if (r.witness->alternative)
      write_file(dir / "alternative.json",
                 serialize_problem(witness_file(id, r.witness->problem.with_profile(*r.witness->alternative))));
    write_file(dir / "witness.json", to_json(r).dump(2) + "\n");
  }
  if (a.format == "json")
    std::cout << to_json(r).dump(2) << "\n";
  else
    std::cout << render_text(r);
  return r.holds ? 0 : 1;
}

struct PartitionArgs {
  std::string sizes, groups, format = "json";
};

int cmd_partition(const PartitionArgs& a) {
  if (a.sizes.empty() == a.groups.empty())
    throw InvalidInput("give exactly one of --sizes or --groups");
  std::vector<std::vector<Division>> groups;
  if (!a.sizes.empty()) {
    int next = 1;
    for (int s : parse_int_list(a.sizes, "sizes")) {
      if (s <= 0) throw InvalidInput("group sizes must be positive");
      std::vector<Division> g;
      for (int k = 0; k < s; ++k) g.push_back(next++);
      groups.push_back(std::move(g));
    }
  } else {
    std::stringstream ss(a.groups);
    std::string part;
    while (std::getline(ss, part, ';')) groups.push_back(parse_int_list(part, "group"));
  }
  const AssignmentPartition p = largest_first_construct(groups);
  if (a.format == "json") {
    json j = tool_header();
    j["n"] = p.size();
    j["partition"] = to_json(p);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& g : p.groups())
      std::cout << "divisions " << join(g.divisions) << " <- workers " << join(g.workers) << "\n";
  }
  return 0;
}

int cmd_repro(const std::string& which, const std::string& format) {
  const std::vector<Report> reports = which == "all" ? repro_all() : std::vector{repro(which)};
  bool ok = true;
  json arr = json::array();
  for (const auto& r : reports) {
    ok = ok && r.pass();
    if (format == "json")
      arr.push_back(to_json(r));
    else
      std::cout << render_text(r);
  }
  if (format == "json") std::cout << (reports.size() == 1 ? arr[0] : arr).dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complete-exchange assignment mechanisms and property checks"};
  app.set_version_flag("--version", std::string(cex::kToolVersion));
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "json"};

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a mechanism on a problem file");
  run->add_option("problem", run_args.problem, "Problem file (JSON)")->required();
  run->add_option("-m,--mechanism", run_args.mechanism, "csd, tsd, cettc, bttc, npb, sd or ttc")
      ->required();
  run->add_option("--mu0", run_args.mu0, "CE-TTC initial derangement: cyclic, seed:N, explicit:a,b,...");
  run->add_option("--order", run_args.order, "SD order, e.g. 3,1,2 (default: priority)");
  run->add_flag("--certify", run_args.certify, "Check efficiency of the outcome");
  run->add_option("--format", run_args.format)->check(CLI::IsMember(formats));

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Sweep a property over preference profiles");
  verify->add_option("-m,--mechanism", verify_args.mechanism)->required();
  verify->add_option("-p,--property", verify_args.property, "ce, sp, ri, cee, eap or pareto")
      ->required();
  verify->add_option("-n,--n", verify_args.n, "Number of divisions")->required();
  verify->add_option("--scope", verify_args.scope, "exhaustive or sampled");
  verify->add_option("--count", verify_args.count, "Sampled profiles");
  verify->add_option("--seed", verify_args.seed, "Sampling seed");
  verify->add_option("--jobs", verify_args.jobs, "Worker threads (0: all cores)");
  verify->add_option("--space", verify_args.space, "canonical (own worker last) or full");
  verify->add_option("--mu0", verify_args.mu0);
  verify->add_option("--order", verify_args.order);
  verify->add_option("--witness-out", verify_args.witness_out,
                     "Directory for replayable witness problem files");
  verify->add_option("--format", verify_args.format)->check(CLI::IsMember(formats));

  PartitionArgs part_args;
  auto* partition = app.add_subcommand("partition", "Build an assignment partition");
  partition->add_option("--sizes", part_args.sizes, "Group sizes, e.g. 3,2,2 (consecutive divisions)");
  partition->add_option("--groups", part_args.groups, "Division groups, e.g. 1,2;3;4,5");
  partition->add_option("--format", part_args.format)->check(CLI::IsMember(formats));

  std::string repro_id, repro_format = "text";
  auto* repro = app.add_subcommand("repro", "Re-derive the worked examples and counterexamples");
  repro->add_option("id", repro_id,
                    "all, intro, n4-tables, bttc-ri, n3-incompatibility or npb:N")
      ->required();
  repro->add_option("--format", repro_format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*verify) return cmd_verify(verify_args);
    if (*partition) return cmd_partition(part_args);
    if (*repro) return cmd_repro(repro_id, repro_format);
  } catch (const cex::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cex::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const cex::BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
