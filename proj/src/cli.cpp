#include "gradflow/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "gradflow/dims.hpp"
#include "gradflow/enumerate.hpp"
#include "gradflow/equiv.hpp"
#include "gradflow/error.hpp"
#include "gradflow/flowgraph.hpp"
#include "gradflow/gradcheck.hpp"
#include "gradflow/singularity.hpp"

namespace gradflow::cli {

namespace {

// Input problems that are not gradflow::Error (unreadable file, bad JSON).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON (byte " + std::to_string(e.byte) + ")");
  }
}

FlowGraph read_flow(const std::string& path) { return flow_from_json(read_json(path)); }

std::string quoted(const std::string& id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string hex64(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

}  // namespace

std::string to_dot(const FlowGraph& flow) {
  std::ostringstream out;
  out << "digraph flow {\n";
  for (const auto& v : flow.vertices()) {
    const char* shape = v.kind == VertexKind::Source ? "triangle" : v.kind == VertexKind::Sink ? "invtriangle" : "diamond";
    out << "  " << quoted(v.id) << " [shape=" << shape << "];\n";
  }
  for (const auto& dart : flow.darts()) {
    if (dart.dir != DartDir::Out) continue;
    const auto& head = flow.dart(dart.partner);
    out << "  " << quoted(flow.vertex(dart.vertex).id) << " -> " << quoted(flow.vertex(head.vertex).id)
        << " [taillabel=" << quoted(dart.id) << ", headlabel=" << quoted(head.id) << "];\n";
  }
  out << "}\n";
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gradient-like Morse flows on closed orientable surfaces", "gradflow"};
  app.require_subcommand(1);

  std::string path;
  bool report_json = false;
  bool mirror = false;
  int k = 0;
  std::optional<int> genus_filter;
  bool gradient_like_only = false;
  bool list = false;
  std::string format = "csv";

  auto* validate = app.add_subcommand("validate", "Build a flow file and print its derived topology");
  validate->add_option("flow", path, "flow JSON file")->required();

  auto* check = app.add_subcommand("check", "Decide gradient-likeness; exit 0 if gradient-like, 1 if not");
  check->add_option("flow", path, "flow JSON file")->required();
  check->add_option_function<std::string>(
           "--report",
           [&](const std::string& kind) {
             if (kind != "json") throw CLI::ValidationError("--report", "only 'json' is supported");
             report_json = true;
           },
           "report format (json)");

  auto* energy = app.add_subcommand("energy", "Print a normalized energy function, or the failing check report");
  energy->add_option("flow", path, "flow JSON file")->required();

  auto* dims = app.add_subcommand("dims", "Dimension report for a function profile");
  dims->add_option("profile", path, "profile JSON file")->required();

  auto* canon = app.add_subcommand("canon", "Canonical code and its 64-bit hash");
  canon->add_option("flow", path, "flow JSON file")->required();
  canon->add_flag("--mirror", mirror, "also quotient by orientation reversal");

  auto* enumerate = app.add_subcommand("enum", "Count equivalence classes of flows with k saddles");
  enumerate->add_option("-k,--k", k, "number of saddles (0-3)")->required();
  enumerate->add_option("--genus", genus_filter, "restrict to one genus");
  enumerate->add_flag("--gradient-like-only", gradient_like_only, "keep gradient-like classes only");
  enumerate->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  enumerate->add_flag("--list", list, "list class codes instead of the count table");

  auto* export_dot = app.add_subcommand("export-dot", "Render a flow file as Graphviz DOT");
  export_dot->add_option("flow", path, "flow JSON file")->required();

  std::vector<std::string> argv_storage{"gradflow"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "gradflow: error: " << msg << '\n';
    return 2;
  }

  try {
    if (validate->parsed()) {
      const FlowGraph flow = read_flow(path);
      nlohmann::json j;
      j["valid"] = true;
      j["special_polar"] = flow.special_polar();
      j["vertices"] = flow.vertex_count();
      j["edges"] = flow.edge_count();
      j["faces"] = flow.face_count();
      j["euler_characteristic"] = euler_characteristic(flow);
      j["genus"] = gradflow::genus(flow);
      j["poincare_hopf"] = poincare_hopf_check(flow);
      j["face_coherent"] = face_coherence_check(flow);
      out << j.dump(2) << '\n';
      return 0;
    }
    if (check->parsed()) {
      const CheckReport r = check_gradient_like(read_flow(path));
      if (report_json) {
        out << to_json(r).dump(2) << '\n';
      } else {
        out << "verdict: " << (r.verdict ? "gradient-like" : "not gradient-like") << '\n';
        out << "sources and sinks present: " << (r.cond_sources_sinks ? "yes" : "no") << '\n';
        out << "separatrices end at equilibria: yes\n";
        out << "no directed saddle cycle: " << (r.cond_no_directed_cycle ? "yes" : "no") << '\n';
        if (r.witness_cycle) {
          out << "witness cycle:";
          for (const auto& id : *r.witness_cycle) out << ' ' << id;
          out << '\n';
        }
      }
      return r.verdict ? 0 : 1;
    }
    if (energy->parsed()) {
      auto result = build_energy(read_flow(path));
      if (auto* e = std::get_if<EnergyAssignment>(&result)) {
        out << nlohmann::json{{"energy", to_json(*e)}}.dump(2) << '\n';
        return 0;
      }
      out << nlohmann::json{{"report", to_json(std::get<CheckReport>(result))}}.dump(2) << '\n';
      return 1;
    }
    if (dims->parsed()) {
      out << to_json(report(profile_from_json(read_json(path)))).dump(2) << '\n';
      return 0;
    }
    if (canon->parsed()) {
      const CanonicalCode c = canonical_code(read_flow(path), mirror);
      nlohmann::json j;
      j["code"] = to_string(c);
      j["hash"] = hex64(stable_hash(c));
      j["mirror_included"] = c.mirror_included;
      out << j.dump(2) << '\n';
      return 0;
    }
    if (enumerate->parsed()) {
      EnumSpec spec;
      spec.saddles = k;
      spec.genus = genus_filter;
      spec.gradient_like_only = gradient_like_only;
      const auto flows = enumerate_flows(spec);
      if (list) {
        if (format == "json") {
          nlohmann::json rows = nlohmann::json::array();
          for (const auto& e : flows) {
            rows.push_back({{"code", to_string(e.code)},
                            {"genus", e.genus},
                            {"sources", e.flow.count(VertexKind::Source)},
                            {"sinks", e.flow.count(VertexKind::Sink)},
                            {"gradient_like", e.gradient_like}});
          }
          out << rows.dump(2) << '\n';
        } else {
          out << "genus,sources,sinks,gradient_like,code\n";
          for (const auto& e : flows) {
            out << e.genus << ',' << e.flow.count(VertexKind::Source) << ',' << e.flow.count(VertexKind::Sink) << ','
                << (e.gradient_like ? 1 : 0) << ',' << to_string(e.code) << '\n';
          }
        }
        return 0;
      }
      const CountTable table = tabulate(flows);
      if (format == "json") {
        out << to_json(table).dump(2) << '\n';
      } else {
        out << to_csv(table);
      }
      return 0;
    }
    if (export_dot->parsed()) {
      out << to_dot(read_flow(path));
      return 0;
    }
  } catch (const Error& e) {
    err << "gradflow: error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "gradflow: error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace gradflow::cli
