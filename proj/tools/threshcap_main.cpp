// Command-line surface: capacity reports, bound families, constructions,
// verification, architecture search, polynomial lifts, and region counts.
// Exit codes: 0 success, 2 input error, 3 budget refusal, 4 verification
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <threshcap/constructions.hpp>
#include <threshcap/extremal.hpp>
#include <threshcap/io.hpp>
#include <threshcap/polycap.hpp>

#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace threshcap;
using nlohmann::ordered_json;

struct Budgets {
  EnumBudget enumeration;
  ConstructionCaps construction;
  PolyCaps poly;
};

Budgets parse_budgets(const std::vector<std::string>& pairs) {
  Budgets b;
  for (const std::string& kv : pairs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw InputError("budget must look like name=value: " + kv);
    const std::string name = kv.substr(0, eq);
    long long value = 0;
    try {
      std::size_t used = 0;
      value = std::stoll(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("bad budget value: " + kv);
    }
    if (value < 1) throw InputError("budget values must be >= 1: " + kv);
    if (name == "max-depth")
      b.enumeration.max_depth = value;
    else if (name == "max-set")
      b.enumeration.max_set = static_cast<std::size_t>(value);
    else if (name == "per-layer-functions")
      b.enumeration.per_layer_functions = static_cast<std::size_t>(value);
    else if (name == "max-tuples")
      b.enumeration.max_tuples = static_cast<std::uint64_t>(value);
    else if (name == "verify-bits")
      b.construction.verify_bits = static_cast<int>(value);
    else if (name == "max-outputs")
      b.construction.max_outputs = static_cast<int>(value);
    else if (name == "max-lift-dim")
      b.poly.max_lift_dim = static_cast<std::size_t>(value);
    else
      throw InputError("unknown budget: " + name);
  }
  return b;
}

Architecture parse_arch(const std::string& text) {
  std::string clean;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') clean += c;
  std::vector<long long> sizes;
  std::istringstream in(clean);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      sizes.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("bad architecture (want n1,n2,...): " + text);
    }
  }
  Architecture arch(std::move(sizes));
  arch.validate();
  return arch;
}

std::string bits_string(const std::vector<std::uint8_t>& bits) {
  std::string out;
  for (std::uint8_t b : bits) out += b ? '1' : '0';
  return out;
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Key/value payload with a deterministic row order; the json form may carry
// one nested object (the network) that csv/table summarize by reference.
struct Payload {
  ordered_json json = ordered_json::object();
  std::vector<std::pair<std::string, std::string>> rows;

  void field(const std::string& key, const std::string& value) {
    json[key] = value;
    rows.emplace_back(key, value);
  }
  void field(const std::string& key, long long value) {
    json[key] = value;
    rows.emplace_back(key, std::to_string(value));
  }
  void field(const std::string& key, bool value) {
    json[key] = value;
    rows.emplace_back(key, value ? "true" : "false");
  }
};

std::string emit_payload(Payload payload, ReportFormat format,
                         const std::string& timestamp) {
  if (!timestamp.empty()) payload.field("generated_at", timestamp);
  if (format == ReportFormat::json) return payload.json.dump(2) + "\n";
  std::string out;
  if (format == ReportFormat::csv) {
    out = "field,value\n";
    for (const auto& [key, value] : payload.rows)
      out += key + "," + value + "\n";
    return out;
  }
  std::size_t width = 0;
  for (const auto& [key, value] : payload.rows)
    width = std::max(width, key.size());
  for (const auto& [key, value] : payload.rows) {
    out += key;
    out.append(width - key.size(), ' ');
    out += "  " + value + "\n";
  }
  return out;
}

ordered_json network_payload(const LayeredNetwork& net) {
  return ordered_json::parse(network_json(net));
}

ordered_json ranking_payload(const std::vector<RankedArchitecture>& ranking) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : ranking) {
    ordered_json row;
    row["architecture"] = r.arch.sizes;
    row["estimated"] = r.estimated.get_str();
    arr.push_back(std::move(row));
  }
  return arr;
}

}  // namespace

static int run(int argc, char** argv) {
  CLI::App app{"exact capacity toolkit for linear threshold networks"};
  app.require_subcommand(1);

  std::string format_name = "table";
  std::string out_path;
  bool timestamps = false;
  int jobs = 0;
  std::size_t max_points = 24;
  std::vector<std::string> budget_pairs;
  bool exact = false;
  bool bounds_only = false;
  app.add_option("--format", format_name, "output format: json, csv, table");
  app.add_option("--out", out_path, "write the report to this file");
  app.add_flag("--timestamps", timestamps, "add a generated-at entry");
  app.add_option("--jobs", jobs, "worker threads for exact counting");
  app.add_option("--max-points", max_points, "largest countable point set");
  app.add_option("--budget", budget_pairs,
                 "raise or lower a named budget, name=value");
  app.add_flag("--exact", exact, "run the exact computation (default)");
  app.add_flag("--bounds-only", bounds_only, "skip exact computations");

  int exit_code = 0;
  std::string output;
  auto format = [&] { return parse_format(format_name); };
  auto stamp = [&] { return timestamps ? utc_now() : std::string(); };
  auto count_options = [&] {
    CountOptions opt;
    opt.jobs = jobs;
    opt.max_points = max_points;
    return opt;
  };
  auto budgets = [&] { return parse_budgets(budget_pairs); };

  // set-capacity
  auto* sc_set = app.add_subcommand(
      "set-capacity", "dichotomy count and bounds of a point set");
  sc_set->fallthrough();
  std::string set_spec;
  sc_set->add_option("set", set_spec, "cube:n or a points file")->required();
  sc_set->callback([&] {
    PointSet s = load_point_set(set_spec);
    output = emit_report(set_capacity_report(s, bounds_only, count_options()),
                         format(), stamp());
  });

  // net-capacity
  auto* sc_net = app.add_subcommand(
      "net-capacity", "exact function count of a small architecture");
  sc_net->fallthrough();
  std::string net_arch;
  sc_net->add_option("architecture", net_arch, "sizes, e.g. 2,2,1")
      ->required();
  sc_net->callback([&] {
    Architecture arch = parse_arch(net_arch);
    if (bounds_only) {
      NetworkReport upper = network_upper_bounds(arch);
      NetworkReport lower = network_lower_bounds(arch);
      upper.bounds.insert(upper.bounds.end(), lower.bounds.begin(),
                          lower.bounds.end());
      output = emit_report(upper, format(), stamp());
    } else {
      output = emit_report(exact_network_capacity(arch, budgets().enumeration),
                           format(), stamp());
    }
  });

  // bounds
  auto* sc_bounds = app.add_subcommand(
      "bounds", "formula bounds of an architecture, no enumeration");
  sc_bounds->fallthrough();
  std::string bounds_arch;
  std::string input_log2;
  sc_bounds->add_option("architecture", bounds_arch, "sizes, e.g. 4,8,1")
      ->required();
  sc_bounds->add_option("--input-log2", input_log2,
                        "log2 of the admissible input count, as p/q");
  sc_bounds->callback([&] {
    Architecture arch = parse_arch(bounds_arch);
    std::optional<Rat> restriction;
    if (!input_log2.empty()) restriction = parse_rat(input_log2);
    NetworkReport report = network_upper_bounds(arch, restriction);
    NetworkReport lower = network_lower_bounds(arch);
    report.bounds.insert(report.bounds.end(), lower.bounds.begin(),
                         lower.bounds.end());
    output = emit_report(report, format(), stamp());
  });

  // construct
  auto* sc_construct =
      app.add_subcommand("construct", "build a verified threshold network");
  sc_construct->require_subcommand(1);
  sc_construct->fallthrough();

  auto* sc_enrich = sc_construct->add_subcommand(
      "enrichment", "injective high-capacity map H^n -> H^m");
  sc_enrich->fallthrough();
  long long enrich_n = 0, enrich_m = 0;
  sc_enrich->add_option("n", enrich_n, "input dimension")->required();
  sc_enrich->add_option("m", enrich_m, "output dimension")->required();
  sc_enrich->callback([&] {
    EnrichmentResult res =
        enrichment_map(enrich_n, enrich_m, budgets().construction);
    LayeredNetwork net;
    net.in_dim = static_cast<int>(enrich_n);
    net.maps.push_back(res.map);
    Payload payload;
    payload.field("kind", std::string("construction"));
    payload.field("construct", std::string("enrichment"));
    payload.field("route", res.route);
    payload.field("verified", res.verified);
    if (res.balance) {
      payload.field("block-bits", res.balance->k);
      payload.field("core-inputs", res.balance->n0);
      payload.field("core-outputs", res.balance->m0);
    }
    payload.json["network"] = network_payload(net);
    payload.rows.emplace_back("network", "use --format json");
    output = emit_payload(std::move(payload), format(), stamp());
  });

  auto* sc_expo = sc_construct->add_subcommand(
      "exponential", "H^k onto the 2^k basis vectors");
  sc_expo->fallthrough();
  long long expo_k = 0;
  sc_expo->add_option("k", expo_k, "input bits")->required();
  sc_expo->callback([&] {
    ThresholdMap map =
        exponential_map(static_cast<int>(expo_k), budgets().construction);
    LayeredNetwork net;
    net.in_dim = static_cast<int>(expo_k);
    net.maps.push_back(std::move(map));
    Payload payload;
    payload.field("kind", std::string("construction"));
    payload.field("construct", std::string("exponential"));
    payload.field("inputs", expo_k);
    payload.field("outputs", static_cast<long long>(1) << expo_k);
    payload.json["network"] = network_payload(net);
    payload.rows.emplace_back("network", "use --format json");
    output = emit_payload(std::move(payload), format(), stamp());
  });

  auto* sc_mux = sc_construct->add_subcommand(
      "multiplex", "route candidate units through selector bits");
  sc_mux->fallthrough();
  std::string mux_set;
  std::string mux_units;
  sc_mux->add_option("--set", mux_set, "cube:n or a points file")->required();
  sc_mux
      ->add_option("--units", mux_units,
                   "single-layer network json holding the candidates")
      ->required();
  sc_mux->callback([&] {
    PointSet s = load_point_set(mux_set);
    LayeredNetwork units_net = load_network(mux_units);
    if (units_net.maps.size() != 1)
      throw InputError("multiplex candidates must form a single layer");
    MultiplexResult res =
        multiplex(s, units_net.maps[0].units, budgets().construction);
    Payload payload;
    payload.field("kind", std::string("construction"));
    payload.field("construct", std::string("multiplex"));
    payload.field("candidates", res.plan.m);
    payload.field("selector-bits", res.plan.m_minus);
    ordered_json sigma = ordered_json::array();
    for (const auto& code : res.plan.sigma) sigma.push_back(bits_string(code));
    payload.json["selectors"] = std::move(sigma);
    payload.rows.emplace_back("selectors", std::to_string(res.plan.m));
    payload.json["network"] = network_payload(res.network);
    payload.rows.emplace_back("network", "use --format json");
    output = emit_payload(std::move(payload), format(), stamp());
  });

  auto* sc_stack = sc_construct->add_subcommand(
      "stack", "chain three-layer modules behind selector bits");
  sc_stack->fallthrough();
  std::vector<std::string> stack_modules;
  std::string stack_target;
  sc_stack
      ->add_option("--module", stack_modules,
                   "three-layer module network json (repeatable, in order)")
      ->required();
  sc_stack
      ->add_option("--target", stack_target,
                   "target architecture n1,...,nL the modules fill")
      ->required();
  sc_stack->callback([&] {
    std::vector<LayeredNetwork> modules;
    for (const std::string& path : stack_modules)
      modules.push_back(load_network(path));
    StackResult res = stack(modules, parse_arch(stack_target),
                            budgets().construction);
    Payload payload;
    payload.field("kind", std::string("construction"));
    payload.field("construct", std::string("stack"));
    payload.field("modules", static_cast<long long>(stack_modules.size()));
    payload.field("selector-bits", res.plan.l_minus);
    ordered_json widths = ordered_json::array();
    for (const auto& w : res.plan.widths) {
      ordered_json row;
      row["layer"] = w.index;
      row["width"] = w.width;
      row["cap"] = w.cap;
      row["six-n"] = w.six_n;
      widths.push_back(std::move(row));
    }
    payload.json["widths"] = std::move(widths);
    payload.rows.emplace_back("layers",
                              std::to_string(res.plan.widths.size()));
    payload.json["network"] = network_payload(res.network);
    payload.rows.emplace_back("network", "use --format json");
    output = emit_payload(std::move(payload), format(), stamp());
  });

  // verify
  auto* sc_verify = app.add_subcommand(
      "verify", "check two networks compute the same function");
  sc_verify->fallthrough();
  std::string verify_a, verify_b;
  sc_verify->add_option("candidate", verify_a, "network json file")
      ->required();
  sc_verify->add_option("reference", verify_b, "network json file")
      ->required();
  sc_verify->callback([&] {
    LayeredNetwork a = load_network(verify_a);
    LayeredNetwork b = load_network(verify_b);
    ConstructionCaps caps = budgets().construction;
    if (b.in_dim > caps.verify_bits)
      throw BudgetError("verify-cap",
                        "reference input dimension exceeds verify-bits");
    EquivalenceResult res = verify_equivalence(a, truth_table(b), caps);
    Payload payload;
    payload.field("kind", std::string("verify"));
    payload.field("equal", res.equal);
    if (res.counterexample)
      payload.field("counterexample", bits_string(*res.counterexample));
    output = emit_payload(std::move(payload), format(), stamp());
    if (!res.equal) exit_code = 4;
  });

  // optimize
  auto* sc_opt =
      app.add_subcommand("optimize", "extremal architectures of the estimate");
  sc_opt->require_subcommand(1);
  sc_opt->fallthrough();
  long long ranking = 0;

  auto* sc_max = sc_opt->add_subcommand(
      "max-nodes", "maximize the estimate over a node budget");
  sc_max->fallthrough();
  long long opt_nodes = 0;
  sc_max->add_option("nodes", opt_nodes, "total node count")->required();
  sc_max->add_option("--ranking", ranking, "include the brute-force top k");
  sc_max->callback([&] {
    RankedArchitecture best = optimal_architecture_nodes(opt_nodes);
    Payload payload;
    payload.field("kind", std::string("optimize"));
    payload.field("objective", std::string("max-nodes"));
    payload.field("architecture", best.arch.str());
    payload.field("estimated", best.estimated.get_str());
    if (ranking > 0) {
      ExtremalSearch brute = brute_force_extremal(
          opt_nodes, std::nullopt, true, static_cast<std::size_t>(ranking));
      payload.json["ranking"] = ranking_payload(brute.ranking);
      payload.rows.emplace_back("ranking", "use --format json");
    }
    output = emit_payload(std::move(payload), format(), stamp());
  });

  auto* sc_max_in = sc_opt->add_subcommand(
      "max-nodes-input", "maximize with the input width pinned");
  sc_max_in->fallthrough();
  long long opt_nodes_in = 0, opt_n1 = 0;
  sc_max_in->add_option("nodes", opt_nodes_in, "total node count")->required();
  sc_max_in->add_option("input", opt_n1, "input layer width")->required();
  sc_max_in->add_option("--ranking", ranking, "include the brute-force top k");
  sc_max_in->callback([&] {
    RankedArchitecture best = optimal_architecture_nodes_input(opt_nodes_in,
                                                               opt_n1);
    Payload payload;
    payload.field("kind", std::string("optimize"));
    payload.field("objective", std::string("max-nodes-input"));
    payload.field("architecture", best.arch.str());
    payload.field("estimated", best.estimated.get_str());
    if (ranking > 0) {
      ExtremalSearch brute = brute_force_extremal(
          opt_nodes_in, opt_n1, true, static_cast<std::size_t>(ranking));
      payload.json["ranking"] = ranking_payload(brute.ranking);
      payload.rows.emplace_back("ranking", "use --format json");
    }
    output = emit_payload(std::move(payload), format(), stamp());
  });

  auto* sc_min = sc_opt->add_subcommand(
      "min", "minimize the estimate under a node or connection budget");
  sc_min->fallthrough();
  long long min_nodes = 0, min_connections = 0, min_n1 = 0;
  sc_min->add_option("--nodes", min_nodes, "node budget");
  sc_min->add_option("--connections", min_connections, "connection budget");
  sc_min->add_option("--input", min_n1, "input layer width")->required();
  sc_min->add_option("--ranking", ranking,
                     "include the brute-force bottom k (node budgets only)");
  sc_min->callback([&] {
    if ((min_nodes > 0) == (min_connections > 0))
      throw InputError("pick exactly one of --nodes and --connections");
    BudgetKind kind =
        min_nodes > 0 ? BudgetKind::nodes : BudgetKind::connections;
    long long budget = min_nodes > 0 ? min_nodes : min_connections;
    Architecture arch = minimal_architecture(kind, budget, min_n1);
    Payload payload;
    payload.field("kind", std::string("optimize"));
    payload.field("objective", std::string("min"));
    payload.field("budget",
                  std::string(min_nodes > 0 ? "nodes" : "connections"));
    payload.field("architecture", arch.str());
    payload.field("estimated", estimated_capacity(arch).value.get_str());
    if (ranking > 0 && kind == BudgetKind::nodes) {
      ExtremalSearch brute = brute_force_extremal(
          budget, min_n1, false, static_cast<std::size_t>(ranking));
      payload.json["ranking"] = ranking_payload(brute.ranking);
      payload.rows.emplace_back("ranking", "use --format json");
    }
    output = emit_payload(std::move(payload), format(), stamp());
  });

  // poly
  auto* sc_poly =
      app.add_subcommand("poly", "degree-d capacity via monomial lifting");
  sc_poly->require_subcommand(1);
  sc_poly->fallthrough();

  auto* sc_poly_set =
      sc_poly->add_subcommand("set", "degree-d dichotomy count of a set");
  sc_poly_set->fallthrough();
  std::string poly_set_spec;
  long long poly_degree = 1;
  sc_poly_set->add_option("set", poly_set_spec, "cube:n or a points file")
      ->required();
  sc_poly_set->add_option("-d,--degree", poly_degree, "polynomial degree")
      ->required();
  sc_poly_set->callback([&] {
    PointSet s = load_point_set(poly_set_spec);
    CapacityReport rep =
        poly_capacity(s, static_cast<int>(poly_degree), bounds_only,
                      count_options(), budgets().poly);
    output = emit_report(rep, format(), stamp());
  });

  auto* sc_poly_net = sc_poly->add_subcommand(
      "net", "degree-d bounds for one hidden layer of m gates");
  sc_poly_net->fallthrough();
  long long poly_n = 0, poly_m = 0, poly_d = 0;
  sc_poly_net->add_option("n", poly_n, "input dimension")->required();
  sc_poly_net->add_option("m", poly_m, "hidden gates")->required();
  sc_poly_net->add_option("d", poly_d, "polynomial degree")->required();
  sc_poly_net->callback([&] {
    output =
        emit_report(poly_network_bounds(poly_n, poly_m, poly_d), format(),
                    stamp());
  });

  // regions
  auto* sc_regions = app.add_subcommand(
      "regions", "regions cut from R^n by m hyperplanes in general position");
  sc_regions->fallthrough();
  long long regions_m = 0, regions_n = 0;
  bool central = false;
  sc_regions->add_option("hyperplanes", regions_m, "number of hyperplanes")
      ->required();
  sc_regions->add_option("dim", regions_n, "ambient dimension")->required();
  sc_regions->add_flag("--central", central, "planes through the origin");
  sc_regions->callback([&] {
    Int count = region_count(regions_m, regions_n, central);
    Payload payload;
    payload.field("kind", std::string("regions"));
    payload.field("hyperplanes", regions_m);
    payload.field("dim", regions_n);
    payload.field("central", central);
    payload.field("count", count.get_str());
    output = emit_payload(std::move(payload), format(), stamp());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (out_path.empty()) {
    std::cout << output;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write output file: " + out_path);
    out << output;
  }
  return exit_code;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BudgetError& e) {
    std::cerr << "budget refusal [" << e.budget << "]: " << e.what() << "\n";
    return 3;
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 4;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
