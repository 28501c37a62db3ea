#include "briar/io.hpp"

#include <json.hpp>
#include <map>
#include <sstream>

#include "briar/errors.hpp"

namespace briar {

using nlohmann::json;

FactorSignature parse_signature(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, FiniteGroupTable> groups;
  FactorSignature sig;
  bool have_sig = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw[0] == '#') continue;
    if (kw == "group") {
      std::string name, kind;
      ls >> name >> kind;
      if (kind == "cyclic") {
        int m;
        ls >> m;
        groups.emplace(name, FiniteGroupTable::cyclic(m, name));
      } else if (kind == "table") {
        int m;
        ls >> m;
        std::vector<int> mul;
        std::string tok;
        while (ls >> tok) {
          if (tok == "/") continue;
          mul.push_back(std::stoi(tok));
        }
        groups.emplace(name, FiniteGroupTable::from_table(name, m, mul));
      } else {
        throw ParseError("unknown group kind: " + kind);
      }
    } else if (kw == "signature") {
      std::string tok;
      ls >> tok;
      if (tok != "factors") throw ParseError("expected 'factors'");
      std::vector<std::string> names;
      while (ls >> tok) {
        if (tok == "rank") break;
        names.push_back(tok);
      }
      ls >> sig.free_rank;
      for (const auto& n : names) {
        auto it = groups.find(n);
        if (it == groups.end()) throw ParseError("unknown factor " + n);
        sig.factors.push_back(it->second);
      }
      have_sig = true;
    }
  }
  if (!have_sig) throw ParseError("missing signature line");
  sig.validate();
  return sig;
}

GogFile parse_gog(const std::string& text) {
  FactorSignature sig = parse_signature(text);
  std::istringstream in(text);
  std::string line;
  std::vector<Word> extra;
  std::map<std::string, int> vertex_ids;
  std::map<std::string, int> edge_ids;
  GraphOfGroups g;
  struct LoopLine {
    std::string wname;
    std::string base;
    std::vector<std::string> tokens;
  };
  std::vector<LoopLine> loop_lines;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw[0] == '#') continue;
    if (kw == "extra-word") {
      std::string rest;
      std::getline(ls, rest);
      extra.push_back(word_from_string(sig, rest));
    } else if (kw == "vertex") {
      std::string id, grp;
      ls >> id >> grp;
      int gi = grp == "trivial" ? -1 : sig.factor_index(grp);
      if (gi < -1 || (gi == -1 && grp != "trivial"))
        throw ParseError("unknown vertex group " + grp);
      vertex_ids[id] = g.add_vertex(gi);
    } else if (kw == "edge") {
      std::string id, from, to;
      ls >> id >> from >> to;
      if (!vertex_ids.count(from) || !vertex_ids.count(to))
        throw ParseError("edge references unknown vertex");
      edge_ids[id] = g.add_edge(vertex_ids[from], vertex_ids[to]);
    } else if (kw == "base") {
      std::string id;
      ls >> id;  // accepted for readability; loops carry their own base
    } else if (kw == "loop") {
      LoopLine ll;
      ls >> ll.wname;
      std::string tok;
      ls >> tok;
      if (tok != "base") throw ParseError("expected 'base' in loop line");
      ls >> ll.base;
      ls >> tok;
      if (tok != ":") throw ParseError("expected ':' in loop line");
      while (ls >> tok) ll.tokens.push_back(tok);
      loop_lines.push_back(std::move(ll));
    }
  }
  auto ctx = SpineContext::make_standard(sig, extra);
  GogFile out;
  out.ctx = ctx;
  if (loop_lines.empty()) {
    // standard marking on the seed shape
    MarkedGraph seed = standard_seed(ctx);
    if (g.V() != 0) {
      // the graph section must agree with the seed shape
      if (g.V() != seed.graph.V() ||
          g.oriented_count() != seed.graph.oriented_count())
        throw ParseError(
            "loops section missing and graph is not the seed shape");
      seed.graph = g;
      seed.loops.clear();
      for (const auto& w : ctx->W) seed.loops.push_back(seed_loop(*ctx, g, w));
      seed.validate();
    }
    out.graph = seed;
    return out;
  }
  MarkedGraph m;
  m.ctx = ctx;
  m.graph = g;
  m.loops.resize(ctx->W.size());
  std::vector<bool> seen(ctx->W.size(), false);
  auto parse_g = [&](const std::string& tok, int vertex) -> int {
    if (tok == "1") return 0;
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw ParseError("bad group token " + tok);
    int fi = sig.factor_index(tok.substr(0, colon));
    if (fi < 0 || m.graph.vertex_group[vertex] != fi)
      throw ParseError("group token " + tok + " not valid at its vertex");
    return std::stoi(tok.substr(colon + 1));
  };
  for (const auto& ll : loop_lines) {
    if (ll.wname.size() < 2 || ll.wname[0] != 'w')
      throw ParseError("loop names are w<i>");
    int wi = std::stoi(ll.wname.substr(1));
    if (wi < 0 || wi >= static_cast<int>(ctx->W.size()))
      throw ParseError("loop index out of range: " + ll.wname);
    if (!vertex_ids.count(ll.base)) throw ParseError("unknown base vertex");
    EdgePath path;
    path.base = vertex_ids[ll.base];
    int at = path.base;
    // alternating g e g e ... g
    for (size_t t = 0; t < ll.tokens.size(); ++t) {
      if (t % 2 == 0) {
        path.elts.push_back(parse_g(ll.tokens[t], at));
      } else {
        std::string etok = ll.tokens[t];
        bool reversed = !etok.empty() && etok[0] == '~';
        if (reversed) etok = etok.substr(1);
        if (!edge_ids.count(etok)) throw ParseError("unknown edge " + etok);
        int e = edge_ids[etok] ^ (reversed ? 1 : 0);
        path.edges.push_back(e);
        at = m.graph.term(e);
      }
    }
    if (path.elts.size() != path.edges.size() + 1)
      throw ParseError("loop line must alternate g e g ... g");
    m.loops[wi] = loop_from_path(sig, m.graph, path);
    seen[wi] = true;
  }
  for (size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw ParseError("missing loop for w" + std::to_string(i));
  m.validate();
  out.graph = m;
  return out;
}

std::string signature_spec(const FactorSignature& sig) {
  std::ostringstream os;
  for (const auto& f : sig.factors) {
    os << "group " << f.name << " table " << f.order;
    for (int r = 0; r < f.order; ++r) {
      os << " /";
      for (int c = 0; c < f.order; ++c) os << ' ' << f.mul[r * f.order + c];
    }
    os << "\n";
  }
  os << "signature factors";
  for (const auto& f : sig.factors) os << ' ' << f.name;
  os << " rank " << sig.free_rank << "\n";
  return os.str();
}

std::string serialize_gog(const MarkedGraph& m) {
  std::ostringstream os;
  os << signature_spec(m.ctx->sig);
  for (size_t i = standard_w_words(m.ctx->sig).size(); i < m.ctx->W.size();
       ++i)
    os << "extra-word " << word_to_string(m.ctx->sig, m.ctx->W[i]) << "\n";
  for (int v = 0; v < m.graph.V(); ++v) {
    int grp = m.graph.vertex_group[v];
    os << "vertex v" << v << ' '
       << (grp < 0 ? std::string("trivial") : m.ctx->sig.factors[grp].name)
       << "\n";
  }
  for (int e = 0; e < m.graph.oriented_count(); e += 2)
    os << "edge e" << (e / 2) << " v" << m.graph.init(e) << " v"
       << m.graph.term(e) << "\n";
  os << "base v0\n";
  for (size_t w = 0; w < m.loops.size(); ++w) {
    const LoopRep& l = m.loops[w];
    os << "loop w" << w << " base v"
       << (l.elliptic() ? std::max(l.elliptic_vertex, 0)
                        : m.graph.init(l.items[0].edge))
       << " :";
    auto gtok = [&](int vertex, int g) -> std::string {
      int grp = m.graph.vertex_group[vertex];
      if (grp < 0 || g == 0) {
        if (g == 0) return "1";
        throw Error("nontrivial element at trivial vertex");
      }
      return m.ctx->sig.factors[grp].name + ":" + std::to_string(g);
    };
    if (l.elliptic()) {
      os << ' ' << gtok(std::max(l.elliptic_vertex, 0), l.elliptic_elt);
    } else {
      for (const auto& item : l.items) {
        os << ' ' << gtok(m.graph.init(item.edge), item.g);
        os << ' ' << (item.edge % 2 ? "~e" : "e") << (item.edge / 2);
      }
      os << " 1";
    }
    os << "\n";
  }
  return os.str();
}

namespace {

json graph_json(const MarkedGraph& m) {
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < m.graph.V(); ++v) {
    int grp = m.graph.vertex_group[v];
    j["vertices"].push_back(grp < 0 ? json(nullptr)
                                    : json(m.ctx->sig.factors[grp].name));
  }
  j["edges"] = json::array();
  for (int e = 0; e < m.graph.oriented_count(); e += 2)
    j["edges"].push_back({m.graph.init(e), m.graph.term(e)});
  j["loops"] = json::array();
  for (const auto& l : m.loops) {
    json jl = json::array();
    for (const auto& it : l.items) jl.push_back({it.g, it.edge});
    j["loops"].push_back(jl);
  }
  return j;
}

MarkedGraph graph_from_json(std::shared_ptr<const SpineContext> ctx,
                            const json& j) {
  MarkedGraph m;
  m.ctx = ctx;
  for (const auto& v : j.at("vertices")) {
    if (v.is_null())
      m.graph.add_vertex(-1);
    else
      m.graph.add_vertex(ctx->sig.factor_index(v.get<std::string>()));
  }
  for (const auto& e : j.at("edges"))
    m.graph.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  for (const auto& jl : j.at("loops")) {
    LoopRep l;
    for (const auto& it : jl)
      l.items.push_back(LoopItem{it.at(0).get<int>(), it.at(1).get<int>()});
    m.loops.push_back(cyclically_reduce(ctx->sig, m.graph, std::move(l)));
  }
  return m;
}

// path/certificate files carry a table canonical-id -> graph
struct IdTable {
  std::map<std::string, json> table;
  std::string put(const MarkedGraph& m) {
    const std::string& id = canonical_string(m);
    if (!table.count(id)) table[id] = graph_json(m);
    return id;
  }
};

json path_json_with(IdTable& tab, const StandardPath& p) {
  json j = json::array();
  for (const auto& e : p.entries) j.push_back(tab.put(e));
  return j;
}

StandardPath path_from_table(std::shared_ptr<const SpineContext> ctx,
                             const json& table, const json& ids) {
  StandardPath p;
  for (const auto& id : ids)
    p.entries.push_back(
        graph_from_json(ctx, table.at(id.get<std::string>())));
  return p;
}

json cert_json_with(IdTable& tab, const HomotopyCertificate& cert) {
  json steps = json::array();
  for (const auto& st : cert.steps) {
    json js;
    js["center"] = tab.put(st.center);
    js["at"] = st.at;
    js["old"] = json::array();
    for (const auto& e : st.old_entries) js["old"].push_back(tab.put(e));
    js["new"] = json::array();
    for (const auto& e : st.new_entries) js["new"].push_back(tab.put(e));
    js["norm_floor"] = st.norm_floor;
    steps.push_back(std::move(js));
  }
  return steps;
}

HomotopyCertificate cert_from_table(std::shared_ptr<const SpineContext> ctx,
                                    const json& table, const json& steps) {
  HomotopyCertificate cert;
  for (const auto& js : steps) {
    Replacement st;
    st.center =
        graph_from_json(ctx, table.at(js.at("center").get<std::string>()));
    st.at = js.at("at").get<int>();
    for (const auto& id : js.at("old"))
      st.old_entries.push_back(
          graph_from_json(ctx, table.at(id.get<std::string>())));
    for (const auto& id : js.at("new"))
      st.new_entries.push_back(
          graph_from_json(ctx, table.at(id.get<std::string>())));
    st.norm_floor = js.at("norm_floor").get<long long>();
    cert.steps.push_back(std::move(st));
  }
  return cert;
}

}  // namespace

std::string marked_graph_to_json(const MarkedGraph& m) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["signature"] = signature_spec(m.ctx->sig);
  j["graph"] = graph_json(m);
  return j.dump(2);
}

MarkedGraph marked_graph_from_json(std::shared_ptr<const SpineContext> ctx,
                                   const std::string& json_text) {
  json j = json::parse(json_text);
  return graph_from_json(ctx, j.at("graph"));
}

std::string path_to_json(const StandardPath& p) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["signature"] = signature_spec(p.entries.front().ctx->sig);
  IdTable tab;
  j["entries"] = path_json_with(tab, p);
  j["table"] = json::object();
  for (auto& [id, g] : tab.table) j["table"][id] = g;
  return j.dump(2);
}

StandardPath path_from_json(std::shared_ptr<const SpineContext> ctx,
                            const std::string& json_text) {
  json j = json::parse(json_text);
  return path_from_table(ctx, j.at("table"), j.at("entries"));
}

std::string push_report_to_json(const StandardPath& input,
                                const PushResult& result, long long k) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "push";
  j["radius"] = k;
  j["signature"] = signature_spec(input.entries.front().ctx->sig);
  IdTable tab;
  j["input"] = path_json_with(tab, input);
  j["output"] = path_json_with(tab, result.path);
  j["certificate"] = cert_json_with(tab, result.cert);
  j["min_norms"] = result.stats.min_norms;
  j["eliminations"] = result.stats.eliminations;
  j["table"] = json::object();
  for (auto& [id, g] : tab.table) j["table"][id] = g;
  return j.dump(2);
}

std::string loop_push_report_to_json(const LoopPush& result, long long k,
                                     long long n) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "push-loop";
  j["k"] = k;
  j["n"] = n;
  j["signature"] =
      signature_spec(result.loop.entries.front().ctx->sig);
  IdTable tab;
  j["input"] = path_json_with(tab, result.composed_input);
  j["output"] = path_json_with(tab, result.loop);
  j["certificate"] = cert_json_with(tab, result.cert);
  j["table"] = json::object();
  for (auto& [id, g] : tab.table) j["table"][id] = g;
  return j.dump(2);
}

CertCheck replay_push_report(std::shared_ptr<const SpineContext> ctx,
                             const std::string& json_text,
                             long long avoid_radius) {
  json j = json::parse(json_text);
  StandardPath in = path_from_table(ctx, j.at("table"), j.at("input"));
  StandardPath out = path_from_table(ctx, j.at("table"), j.at("output"));
  HomotopyCertificate cert =
      cert_from_table(ctx, j.at("table"), j.at("certificate"));
  return replay_certificate(in, cert, out, avoid_radius);
}

std::string ball_report_to_json(const Ball& ball) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "ball";
  j["radius"] = ball.radius;
  j["N"] = ball.N_r;
  j["vertices"] = json::array();
  for (const auto& p : ball.patches)
    j["vertices"].push_back({{"id", p.canon}, {"norm", p.norm}});
  j["adjacency"] = json::array();
  for (const auto& s : ball.star_nodes)
    j["adjacency"].push_back({{"star", s.canon}, {"targets", s.targets}});
  j["C_r"] = json::array();
  for (const auto& p : ball.c_r)
    j["C_r"].push_back({{"id", p.canon}, {"norm", p.norm}});
  return j.dump(2);
}

std::string ball_adjacency_dot(const Ball& ball) {
  std::ostringstream os;
  os << "graph ball {\n";
  std::map<std::string, int> pid;
  for (size_t i = 0; i < ball.patches.size(); ++i) {
    pid[ball.patches[i].canon] = static_cast<int>(i);
    os << "  p" << i << " [label=\"norm " << ball.patches[i].norm
       << "\"];\n";
  }
  int sid = 0;
  for (const auto& s : ball.star_nodes) {
    std::vector<int> in_ball;
    for (const auto& t : s.targets)
      if (pid.count(t)) in_ball.push_back(pid[t]);
    if (in_ball.size() < 2) {
      ++sid;
      continue;
    }
    os << "  s" << sid << " [shape=point];\n";
    for (int t : in_ball) os << "  s" << sid << " -- p" << t << ";\n";
    ++sid;
  }
  os << "}\n";
  return os.str();
}

std::string star_graph_dot(const MarkedGraph&, const StarGraph& s) {
  std::ostringstream os;
  os << "graph star {\n";
  for (int d = 0; d < s.num_dirs(); ++d)
    os << "  d" << d << " [label=\"(" << s.dir_g[d] << ",e" << s.dir_edge[d]
       << ")@v" << s.dir_vertex[d] << "\"];\n";
  for (size_t i = 0; i < s.graph.ends.size(); ++i)
    os << "  d" << s.graph.ends[i][0] << " -- d" << s.graph.ends[i][1]
       << " [label=\"" << s.graph.mult[i] << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace briar
