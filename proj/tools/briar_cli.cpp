// Command-line front door: every subcommand emits a JSON report (schema
// version 1); the human-readable output is rendered from that JSON.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "briar/ball.hpp"
#include "briar/catalog.hpp"
#include "briar/errors.hpp"
#include "briar/io.hpp"
#include "briar/lemmas.hpp"
#include "briar/paths.hpp"
#include "briar/polygon.hpp"

using namespace briar;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

struct SigOpts {
  std::string input;   // .gog file
  int n = -1, k = -1;
  std::vector<int> orders;
};

void add_sig_opts(CLI::App* cmd, SigOpts& so) {
  cmd->add_option("--input", so.input, "marked graph (.gog) input file");
  cmd->add_option("--n", so.n, "number of finite factors");
  cmd->add_option("--k", so.k, "free rank");
  cmd->add_option("--orders", so.orders,
                  "factor orders (cyclic groups), default all 2");
}

GogFile load_sig(const SigOpts& so) {
  if (!so.input.empty()) return parse_gog(slurp(so.input));
  if (so.n < 0 || so.k < 0)
    throw CLI::ValidationError("--input or both --n and --k required");
  FactorSignature sig;
  for (int i = 0; i < so.n; ++i) {
    int ord = i < static_cast<int>(so.orders.size()) ? so.orders[i] : 2;
    sig.factors.push_back(
        FiniteGroupTable::cyclic(ord, "A" + std::to_string(i + 1)));
  }
  sig.free_rank = so.k;
  GogFile out;
  out.ctx = SpineContext::make_standard(sig);
  out.graph = standard_seed(out.ctx);
  return out;
}

void emit(const std::string& jtext, const std::string& output, bool raw_json,
          const std::function<void(const json&)>& render) {
  if (!output.empty()) spill(output, jtext);
  if (raw_json || !render)
    std::cout << jtext << "\n";
  else
    render(json::parse(jtext));
}

int run(int argc, char** argv) {
  CLI::App app{"combinatorics of the spine of reduced Outer Space for free "
               "products: norms, star graphs, Whitehead moves, lemma "
               "oracles, and push-to-infinity path rewriting"};
  app.require_subcommand(1);
  bool raw_json = false;
  std::string output;
  int jobs = 1;
  app.add_flag("--json", raw_json, "print the raw JSON report");
  app.add_option("--output", output, "write the JSON report to a file");
  app.add_option("--jobs", jobs, "worker fan-out (results independent of it)");

  // classify
  auto* c_classify = app.add_subcommand("classify", "ends/dimension table");
  int cn = 0, ck = 0;
  c_classify->add_option("--n", cn)->required();
  c_classify->add_option("--k", ck)->required();

  // norm
  auto* c_norm = app.add_subcommand("norm", "norm of a marked graph");
  SigOpts norm_sig;
  add_sig_opts(c_norm, norm_sig);
  std::string norm_pos;
  c_norm->add_option("file", norm_pos, ".gog file (positional)");

  // stargraph
  auto* c_star = app.add_subcommand("stargraph", "star graph with respect to W");
  SigOpts star_sig;
  add_sig_opts(c_star, star_sig);
  std::string star_dot;
  c_star->add_option("--dot", star_dot, "write a DOT rendering");

  // ideal-edges
  auto* c_ideal = app.add_subcommand("ideal-edges", "ideal edge classes");
  SigOpts ideal_sig;
  add_sig_opts(c_ideal, ideal_sig);
  int ideal_vertex = 0, ideal_max = 6;
  c_ideal->add_option("--vertex", ideal_vertex);
  c_ideal->add_option("--max-size", ideal_max);

  // move
  auto* c_move = app.add_subcommand("move", "apply a Whitehead move");
  SigOpts move_sig;
  add_sig_opts(c_move, move_sig);
  int move_vertex = 0;
  std::vector<std::string> move_alpha;
  std::string move_edge;
  c_move->add_option("--vertex", move_vertex)->required();
  c_move->add_option("--alpha", move_alpha, "directions g:e")->required();
  c_move->add_option("--edge", move_edge, "direction g:e to collapse")
      ->required();
  std::string move_out;
  c_move->add_option("--write-gog", move_out, "write the result as .gog");

  // ball
  auto* c_ball = app.add_subcommand("ball", "explore a norm ball");
  SigOpts ball_sig;
  add_sig_opts(c_ball, ball_sig);
  long long ball_radius = 0;
  long long ball_budget = 200000;
  std::string ball_dot;
  c_ball->add_option("--radius", ball_radius)->required();
  c_ball->add_option("--budget", ball_budget);
  c_ball->add_option("--dot", ball_dot, "write the adjacency DOT");

  // verify-lemmas
  auto* c_lem = app.add_subcommand("verify-lemmas", "counting lemma oracles");
  std::string lem_id = "all";
  long long lem_trials = 1000;
  uint64_t lem_seed = 1;
  std::vector<std::string> lem_signatures;
  long long lem_norm_budget = 0;
  std::string lem_witness = "lemma-witness.json";
  c_lem->add_option("--lemma", lem_id, "lemma id or 'all'");
  c_lem->add_option("--trials", lem_trials, "random multigraph count");
  c_lem->add_option("--seed", lem_seed);
  c_lem->add_option("--signatures", lem_signatures,
                    "briar-patch campaigns, e.g. 2+1x2 for (n,k)=(2,1), "
                    "orders 2");
  c_lem->add_option("--norm-budget", lem_norm_budget,
                    "patch enumeration budget above the seed norm");
  c_lem->add_option("--witness-file", lem_witness);

  // push
  auto* c_push = app.add_subcommand("push", "push a standard path outside a ball");
  std::string push_input;
  long long push_radius = 0;
  bool push_emit_cert = true;
  c_push->add_option("--input", push_input, "path JSON")->required();
  c_push->add_option("--radius", push_radius)->required();
  c_push->add_flag("--emit-certificate,!--no-emit-certificate",
                   push_emit_cert);

  // push-loop
  auto* c_ploop = app.add_subcommand("push-loop", "push a loop outside a ball");
  std::string ploop_input;
  long long ploop_k = 0, ploop_n = 0;
  c_ploop->add_option("--loop", ploop_input, "loop path JSON")->required();
  c_ploop->add_option("--k", ploop_k)->required();
  c_ploop->add_option("--n", ploop_n)->required();

  // ray
  auto* c_ray = app.add_subcommand("ray", "greedy strictly increasing ray");
  SigOpts ray_sig;
  add_sig_opts(c_ray, ray_sig);
  int ray_length = -1;
  long long ray_target = -1;
  c_ray->add_option("--length", ray_length);
  c_ray->add_option("--target-norm", ray_target);

  // verify-presentation
  auto* c_pres = app.add_subcommand("verify-presentation",
                                    "relation catalog for Out(A1*A2*Z)");
  std::string pres_a1 = "2", pres_a2 = "2";
  c_pres->add_option("--a1", pres_a1, "order of a cyclic group or table file");
  c_pres->add_option("--a2", pres_a2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors
  }

  if (c_classify->parsed()) {
    Classification cl = classify(cn, ck);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "classify";
    j["n"] = cn;
    j["k"] = ck;
    j["dim_L"] = cl.dim_L;
    j["edge_number"] = cl.edge_number;
    j["ends"] = ends_name(cl.ends);
    emit(j.dump(2), output, raw_json, [](const json& r) {
      std::cout << "ends " << r.at("ends").get<std::string>() << ", dim "
                << r.at("dim_L") << ", edge number " << r.at("edge_number")
                << "\n";
    });
    return 0;
  }

  if (c_norm->parsed()) {
    if (!norm_pos.empty()) norm_sig.input = norm_pos;
    GogFile g = load_sig(norm_sig);
    StarGraph s = g.graph.star_graph();
    Rational r = norm_from_star(g.graph, s);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "norm";
    j["norm"] = g.graph.norm();
    j["norm_from_star_num"] = r.numerator();
    j["norm_from_star_den"] = r.denominator();
    j["lengths"] = json::array();
    for (size_t w = 0; w < g.ctx->W.size(); ++w)
      j["lengths"].push_back({{"word", word_to_string(g.ctx->sig, g.ctx->W[w])},
                              {"length", g.graph.translation_length(
                                             static_cast<int>(w))}});
    emit(j.dump(2), output, raw_json, [](const json& r2) {
      std::cout << r2.at("norm") << "\n";
    });
    return 0;
  }

  if (c_star->parsed()) {
    GogFile g = load_sig(star_sig);
    StarGraph s = g.graph.star_graph();
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "stargraph";
    j["directions"] = json::array();
    for (int d = 0; d < s.num_dirs(); ++d)
      j["directions"].push_back({{"vertex", s.dir_vertex[d]},
                                 {"edge", s.dir_edge[d]},
                                 {"g", s.dir_g[d]},
                                 {"abs", s.graph.absolute({d})}});
    j["edges"] = json::array();
    for (size_t i = 0; i < s.graph.ends.size(); ++i)
      j["edges"].push_back(
          {s.graph.ends[i][0], s.graph.ends[i][1], s.graph.mult[i]});
    j["components"] = s.graph.component_count();
    if (!star_dot.empty()) spill(star_dot, star_graph_dot(g.graph, s));
    emit(j.dump(2), output, raw_json, [](const json& r) {
      std::cout << r.at("directions").size() << " directions, "
                << r.at("edges").size() << " turn classes, "
                << r.at("components") << " components\n";
    });
    return 0;
  }

  if (c_ideal->parsed()) {
    GogFile g = load_sig(ideal_sig);
    StarGraph s = g.graph.star_graph();
    auto edges = enumerate_ideal_edges(g.graph, ideal_vertex, ideal_max);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "ideal-edges";
    j["vertex"] = ideal_vertex;
    j["classes"] = json::array();
    for (const auto& a : edges) {
      json ja;
      ja["dirs"] = json::array();
      for (const auto& d : a.dirs) ja["dirs"].push_back({d.g, d.edge});
      ja["abs"] = s.abs_dirs(a.dirs);
      ja["reductive"] = is_reductive(s, a);
      j["classes"].push_back(std::move(ja));
    }
    emit(j.dump(2), output, raw_json, [](const json& r) {
      for (const auto& a : r.at("classes")) {
        std::cout << "{";
        for (const auto& d : a.at("dirs"))
          std::cout << " (" << d.at(0) << ",e" << d.at(1) << ")";
        std::cout << " }  |.|=" << a.at("abs") << (a.at("reductive").get<bool>()
                                                       ? "  reductive"
                                                       : "")
                  << "\n";
      }
    });
    return 0;
  }

  if (c_move->parsed()) {
    GogFile g = load_sig(move_sig);
    auto parse_dir = [&](const std::string& tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw CLI::ValidationError("directions are g:e");
      return Dir{std::stoi(tok.substr(colon + 1)),
                 std::stoi(tok.substr(0, colon))};
    };
    IdealEdge a;
    a.vertex = move_vertex;
    for (const auto& t : move_alpha) a.dirs.push_back(parse_dir(t));
    std::sort(a.dirs.begin(), a.dirs.end());
    Dir d = parse_dir(move_edge);
    MarkedGraph moved = whitehead_move(g.graph, a, d);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "move";
    j["norm_before"] = g.graph.norm();
    j["norm_after"] = moved.norm();
    j["result"] = json::parse(marked_graph_to_json(moved));
    if (!move_out.empty()) spill(move_out, serialize_gog(moved));
    emit(j.dump(2), output, raw_json, [](const json& r) {
      std::cout << "norm " << r.at("norm_before") << " -> "
                << r.at("norm_after") << "\n";
    });
    return 0;
  }

  if (c_ball->parsed()) {
    GogFile g = load_sig(ball_sig);
    BallOptions opts;
    opts.patch_budget = ball_budget;
    Ball ball = explore_ball(g.graph, ball_radius, opts);
    if (!ball_dot.empty()) spill(ball_dot, ball_adjacency_dot(ball));
    emit(ball_report_to_json(ball), output, raw_json, [](const json& r) {
      std::cout << r.at("vertices").size() << " patches of norm <= "
                << r.at("radius") << ", N = " << r.at("N") << ", |C_r| = "
                << r.at("C_r").size() << "\n";
    });
    return 0;
  }

  if (c_lem->parsed()) {
    std::vector<LemmaId> ids;
    if (lem_id == "all") {
      ids = all_lemmas();
    } else {
      auto found = lemma_from_name(lem_id);
      if (!found) throw CLI::ValidationError("unknown lemma id " + lem_id);
      ids = {*found};
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "verify-lemmas";
    j["seed"] = lem_seed;
    j["trials"] = lem_trials;
    j["rows"] = json::array();
    bool any_violation = false;
    std::string witness;
    for (LemmaId id : ids) {
      CampaignStats total;
      // random multigraph campaign, deterministically split over jobs
      int njobs = std::max(1, jobs);
      std::vector<CampaignStats> parts(njobs);
      std::vector<std::thread> threads;
      for (int t = 0; t < njobs; ++t)
        threads.emplace_back([&, t]() {
          for (long long g = t; g < lem_trials; g += njobs) {
            std::mt19937_64 rng(lem_seed + 0x9e3779b97f4a7c15ULL * (g + 1));
            MultiGraph mg = random_multigraph(rng);
            CampaignStats st = scan_multigraph(id, mg, rng);
            parts[t].contexts += st.contexts;
            parts[t].violations += st.violations;
            if (parts[t].first_witness.empty())
              parts[t].first_witness = st.first_witness;
          }
        });
      for (auto& th : threads) th.join();
      for (auto& st : parts) {
        total.contexts += st.contexts;
        total.violations += st.violations;
        if (total.first_witness.empty())
          total.first_witness = st.first_witness;
      }
      // briar-patch campaigns
      for (const auto& spec : lem_signatures) {
        // format: n+kxO1,O2,... e.g. "2+1x2,2"
        auto plus = spec.find('+');
        auto ex = spec.find('x');
        if (plus == std::string::npos || ex == std::string::npos)
          throw CLI::ValidationError("signature spec is n+kxO1,O2,...");
        int n = std::stoi(spec.substr(0, plus));
        int k = std::stoi(spec.substr(plus + 1, ex - plus - 1));
        std::vector<int> orders;
        std::istringstream os(spec.substr(ex + 1));
        std::string tok;
        while (std::getline(os, tok, ',')) orders.push_back(std::stoi(tok));
        FactorSignature sig;
        for (int i = 0; i < n; ++i)
          sig.factors.push_back(FiniteGroupTable::cyclic(
              i < static_cast<int>(orders.size()) ? orders[i] : 2,
              "A" + std::to_string(i + 1)));
        sig.free_rank = k;
        auto ctx = SpineContext::make_standard(sig);
        MarkedGraph seed = standard_seed(ctx);
        Ball ball = explore_ball(seed, seed.norm() + lem_norm_budget);
        for (const auto& p : ball.patches) {
          CampaignStats st = scan_marked_graph(id, p.rep);
          total.contexts += st.contexts;
          total.violations += st.violations;
          if (total.first_witness.empty())
            total.first_witness = st.first_witness;
        }
      }
      j["rows"].push_back({{"lemma", lemma_name(id)},
                           {"contexts", total.contexts},
                           {"violations", total.violations}});
      if (total.violations > 0) {
        any_violation = true;
        if (witness.empty()) witness = total.first_witness;
      }
    }
    j["holds"] = !any_violation;
    if (any_violation) {
      json w;
      w["witness"] = witness;
      spill(lem_witness, w.dump(2));
      j["witness_file"] = lem_witness;
    }
    emit(j.dump(2), output, raw_json, [](const json& r) {
      for (const auto& row : r.at("rows"))
        std::cout << row.at("lemma").get<std::string>() << ": "
                  << row.at("contexts") << " contexts, "
                  << row.at("violations") << " violations\n";
      std::cout << (r.at("holds").get<bool>() ? "HOLDS" : "VIOLATION")
                << "\n";
    });
    return any_violation ? 1 : 0;
  }

  if (c_push->parsed()) {
    std::string text = slurp(push_input);
    json pj = json::parse(text);
    FactorSignature sig = parse_signature(pj.at("signature").get<std::string>());
    auto ctx = SpineContext::make_standard(sig);
    StandardPath p = path_from_json(ctx, text);
    MarkedGraph seed = standard_seed(ctx);
    Ball ball = explore_ball(seed, push_radius);
    PushResult pr = push_outside_ball(p, push_radius, ball);
    CertCheck cc = replay_certificate(p, pr.cert, pr.path, -1);
    if (!cc.ok) throw Error("certificate replay failed: " + cc.why);
    emit(push_report_to_json(p, pr, push_radius), output, raw_json,
         [](const json& r) {
           std::cout << "pushed outside B_" << r.at("radius") << " in "
                     << r.at("eliminations") << " eliminations; "
                     << r.at("output").size() << " entries\n";
         });
    return 0;
  }

  if (c_ploop->parsed()) {
    std::string text = slurp(ploop_input);
    json pj = json::parse(text);
    FactorSignature sig = parse_signature(pj.at("signature").get<std::string>());
    auto ctx = SpineContext::make_standard(sig);
    StandardPath loop = path_from_json(ctx, text);
    MarkedGraph seed = standard_seed(ctx);
    Ball ball_k = explore_ball(seed, ploop_k);
    Ball ball_n = explore_ball(seed, ploop_n);
    Ray ray = build_ray_above(seed, ball_n.N_r);
    LoopPush lp = push_loop(loop, ploop_k, ploop_n, ray, ball_k, ball_n);
    emit(loop_push_report_to_json(lp, ploop_k, ploop_n), output, raw_json,
         [](const json& r) {
           std::cout << "loop pushed outside B_" << r.at("n")
                     << ", certificate avoids B_" << r.at("k") << "\n";
         });
    return 0;
  }

  if (c_ray->parsed()) {
    GogFile g = load_sig(ray_sig);
    Ray ray = ray_target >= 0 ? build_ray_above(g.graph, ray_target)
                              : build_ray(g.graph, std::max(ray_length, 0));
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "ray";
    j["norms"] = json::array();
    for (const auto& p : ray.patches) j["norms"].push_back(p.total_length());
    j["path"] = json::parse(path_to_json(ray.path));
    emit(j.dump(2), output, raw_json, [](const json& r) {
      std::cout << "ray norms:";
      for (const auto& n : r.at("norms")) std::cout << " " << n;
      std::cout << "\n";
    });
    return 0;
  }

  if (c_pres->parsed()) {
    auto load_table = [](const std::string& s) {
      try {
        int order = std::stoi(s);
        return FiniteGroupTable::cyclic(order);
      } catch (const std::invalid_argument&) {
        FactorSignature sig = parse_signature(slurp(s));
        return sig.factors.at(0);
      }
    };
    FiniteGroupTable A1 = load_table(pres_a1), A2 = load_table(pres_a2);
    CatalogReport rep = verify_catalog(A1, A2);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "verify-presentation";
    j["rows"] = json::array();
    // canonical report order regardless of worker count
    for (const auto& r : rep.rows)
      j["rows"].push_back(
          {{"item", r.item}, {"params", r.params}, {"pass", r.pass}});
    j["instances"] = rep.instances;
    j["all_pass"] = rep.all_pass;
    emit(j.dump(2), output, raw_json, [](const json& r) {
      std::map<std::string, std::pair<int, int>> by_item;
      for (const auto& row : r.at("rows")) {
        auto& e = by_item[row.at("item").get<std::string>()];
        ++e.first;
        if (row.at("pass").get<bool>()) ++e.second;
      }
      for (const auto& [item, e] : by_item)
        std::cout << "item " << item << ": " << e.second << "/" << e.first
                  << " pass\n";
      std::cout << (r.at("all_pass").get<bool>() ? "PASS" : "FAIL") << "\n";
    });
    return rep.all_pass ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error&) {
    // CLI11_PARSE already printed and returned; unreachable in practice
    return 2;
  } catch (const briar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
