#include "polycover/cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "polycover/census.hpp"
#include "polycover/eset.hpp"
#include "polycover/oracle.hpp"
#include "polycover/word.hpp"

namespace polycover {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInternalError = 1;
constexpr int kUsageError = 2;
constexpr int kGuardRefusal = 3;
constexpr int kDisagreement = 4;

const char* kDotPalette[] = {"red",       "blue",     "forestgreen", "orange",
                             "purple",    "brown",    "cadetblue",   "magenta",
                             "darkgoldenrod", "gray40", "deeppink",  "navy"};

struct Options {
  int m = 0;
  std::string j_text;
  std::string lambda_text;
  int p = 0;
  std::vector<std::string> e1_texts;
  std::vector<std::string> e2_texts;
  std::string method = "diagram";
  std::string format = "text";
  std::string out_path;
  int parallel = 1;
  bool timing = false;
  bool dot = false;
};

struct ClassCounts {
  std::string word;
  BigCount count;
  BigCount count_rt;
};

ordered_json census_json(int m, const JTuple& j, const std::string& method,
                         const BigCount& total, const BigCount& real_toric,
                         const std::vector<ClassCounts>& per_class) {
  ordered_json report;
  report["m"] = m;
  report["j"] = j.entries;
  report["method"] = method;
  report["total"] = total.to_string();
  report["real_toric"] = real_toric.to_string();
  ordered_json rows = ordered_json::array();
  for (const auto& row : per_class) {
    ordered_json item;
    item["class"] = row.word;
    item["count"] = row.count.to_string();
    item["count_rt"] = row.count_rt.to_string();
    rows.push_back(std::move(item));
  }
  report["per_class"] = std::move(rows);
  return report;
}

std::string census_csv(const std::vector<ClassCounts>& per_class) {
  std::string out = "class,count,count_rt\n";
  for (const auto& row : per_class)
    out += row.word + "," + row.count.to_string() + "," + row.count_rt.to_string() + "\n";
  return out;
}

ordered_json verify_json(const VerifyReport& report) {
  ordered_json out;
  out["m"] = report.m;
  out["j"] = report.j.entries;
  out["diagram"] = report.diagram.to_string();
  out["formula"] = report.formula ? ordered_json(report.formula->to_string())
                                  : ordered_json(nullptr);
  out["bruteforce"] = report.bruteforce.to_string();
  out["agree"] = report.agree;
  if (report.agree) {
    out["witness"] = nullptr;
  } else {
    ordered_json witness;
    witness["methods"] = ordered_json::array({"diagram", "bruteforce"});
    witness["values"] = ordered_json::array(
        {report.diagram.to_string(), report.bruteforce.to_string()});
    if (report.formula) {
      witness["methods"].push_back("formula");
      witness["values"].push_back(report.formula->to_string());
    }
    out["witness"] = std::move(witness);
  }
  return out;
}

std::string verify_text(const VerifyReport& report) {
  std::string out = "diagram=" + report.diagram.to_string() + "\n";
  out += "formula=" + (report.formula ? report.formula->to_string() : "n/a") + "\n";
  out += "bruteforce=" + report.bruteforce.to_string() + "\n";
  out += std::string("agree=") + (report.agree ? "true" : "false") + "\n";
  return out;
}

// Full per-class census (counts plus real-toric counts) via the diagram.
// Per-class jobs are independent; the merge order is the class order, so the
// output is the same no matter how workers are scheduled.
std::vector<ClassCounts> diagram_rows(int m, const JTuple& j, int parallel,
                                      BigCount& total, BigCount& real_toric) {
  auto classes = enumerate_classes(m);
  std::vector<ClassCounts> rows(classes.size());
  auto job = [&](std::size_t i) {
    rows[i].word = classes[i].word().str();
    rows[i].count = count_E(classes[i], j);
    rows[i].count_rt = count_E_RT(classes[i], j);
  };
  if (parallel <= 1) {
    for (std::size_t i = 0; i < classes.size(); ++i) job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= classes.size()) return;
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < parallel; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  total = BigCount{};
  real_toric = BigCount{};
  for (const auto& row : rows) {
    total += row.count;
    real_toric += row.count_rt;
  }
  return rows;
}

std::string render_dot(int m) {
  std::string out = "graph diagram_P" + std::to_string(m) + " {\n";
  auto classes = enumerate_classes(m);
  for (const auto& cls : classes) out += "  \"" + cls.word().str() + "\";\n";
  for (const auto& cls : classes) {
    for (int p = 1; p <= m; ++p) {
      for (const auto& [e, other] : adjacent_classes(cls, p)) {
        if (e.set.empty()) continue;       // trivial edges omitted
        if (!(cls < other)) continue;      // each nontrivial edge once
        out += "  \"" + cls.word().str() + "\" -- \"" + other.word().str() +
               "\" [color=" + kDotPalette[(p - 1) % 12] + ", label=\"" + to_string(e) +
               "\"];\n";
      }
    }
  }
  out += "}\n";
  return out;
}

JTuple parse_j_for(const Options& opt, int m) {
  if (opt.j_text.empty()) throw std::invalid_argument("missing --j");
  JTuple j = JTuple::parse(opt.j_text);
  if (m > 0 && j.m() != m)
    throw std::invalid_argument("--j has " + std::to_string(j.m()) +
                                " entries but --m is " + std::to_string(m));
  return j;
}

DJClass parse_lambda(const Options& opt) {
  if (opt.lambda_text.empty()) throw std::invalid_argument("missing --lambda");
  return parse_class(opt.lambda_text);
}

int emit(const Options& opt, const std::string& payload, std::ostream& out,
         std::ostream& err) {
  if (!opt.out_path.empty()) {
    std::ofstream file(opt.out_path);
    if (!file) {
      err << "error: cannot open output file " << opt.out_path << "\n";
      return kInternalError;
    }
    file << payload;
    return kOk;
  }
  out << payload;
  return kOk;
}

std::string dump_json(const ordered_json& value) { return value.dump(2) + "\n"; }

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (opt.format == f) return;
  throw std::invalid_argument("--format " + opt.format + " is not supported here");
}

int run_nodes(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.m < 3) throw std::invalid_argument("missing or invalid --m");
  if (opt.dot) return emit(opt, render_dot(opt.m), out, err);
  auto classes = enumerate_classes(opt.m);
  if (opt.format == "json") {
    ordered_json report;
    report["m"] = opt.m;
    report["count"] = std::to_string(classes.size());
    ordered_json words = ordered_json::array();
    for (const auto& cls : classes) words.push_back(cls.word().str());
    report["classes"] = std::move(words);
    return emit(opt, dump_json(report), out, err);
  }
  std::string payload;
  if (opt.format == "csv") payload = "class\n";
  for (const auto& cls : classes) payload += cls.word().str() + "\n";
  return emit(opt, payload, out, err);
}

int run_edges(const Options& opt, std::ostream& out, std::ostream& err) {
  DJClass cls = parse_lambda(opt);
  std::vector<int> ps;
  if (opt.p > 0) {
    if (opt.p > cls.size()) throw std::invalid_argument("--p outside 1..m");
    ps.push_back(opt.p);
  } else {
    for (int p = 1; p <= cls.size(); ++p) ps.push_back(p);
  }
  std::vector<std::pair<std::string, std::string>> rows;
  for (int p : ps)
    for (const auto& [e, other] : adjacent_classes(cls, p))
      rows.emplace_back(to_string(e), other.word().str());
  if (opt.format == "json") {
    ordered_json report;
    report["lambda"] = cls.word().str();
    ordered_json edges = ordered_json::array();
    for (const auto& [eset, word] : rows) {
      ordered_json item;
      item["eset"] = eset;
      item["class"] = word;
      edges.push_back(std::move(item));
    }
    report["edges"] = std::move(edges);
    return emit(opt, dump_json(report), out, err);
  }
  std::string payload;
  if (opt.format == "csv") payload = "eset,class\n";
  for (const auto& [eset, word] : rows)
    payload += opt.format == "csv" ? (eset + "," + word + "\n") : (eset + " " + word + "\n");
  return emit(opt, payload, out, err);
}

std::pair<ESet, ESet> parse_pair(const Options& opt, int m) {
  if (opt.e1_texts.size() != 1 || opt.e2_texts.size() != 1)
    throw std::invalid_argument("need exactly one --e1 and one --e2");
  return {parse_eset(opt.e1_texts[0], m), parse_eset(opt.e2_texts[0], m)};
}

int run_related(const Options& opt, std::ostream& out, std::ostream& err) {
  require_format(opt, {"text", "json"});
  DJClass cls = parse_lambda(opt);
  auto [e1, e2] = parse_pair(opt, cls.size());
  const char* kind = to_string(relatedness(cls, e1, e2));
  if (opt.format == "json") {
    ordered_json report;
    report["lambda"] = cls.word().str();
    report["e1"] = to_string(e1);
    report["e2"] = to_string(e2);
    report["relatedness"] = kind;
    return emit(opt, dump_json(report), out, err);
  }
  return emit(opt, std::string(kind) + "\n", out, err);
}

int run_square(const Options& opt, std::ostream& out, std::ostream& err) {
  require_format(opt, {"text", "json"});
  DJClass cls = parse_lambda(opt);
  auto [e1, e2] = parse_pair(opt, cls.size());
  DJClass fourth = fourth_node(cls, e1, e2);
  if (opt.format == "json") {
    ordered_json report;
    report["lambda"] = cls.word().str();
    report["e1"] = to_string(e1);
    report["e2"] = to_string(e2);
    report["fourth"] = fourth.word().str();
    return emit(opt, dump_json(report), out, err);
  }
  return emit(opt, fourth.word().str() + "\n", out, err);
}

int run_count_covers(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.m < 3) throw std::invalid_argument("missing or invalid --m");
  JTuple j = parse_j_for(opt, opt.m);

  if (opt.method == "all") {
    require_format(opt, {"text", "json"});
    VerifyReport report = verify(opt.m, j, opt.parallel);
    int code = kOk;
    if (!report.agree) code = kDisagreement;
    int emitted = emit(opt,
                       opt.format == "json" ? dump_json(verify_json(report))
                                            : verify_text(report),
                       out, err);
    return emitted != kOk ? emitted : code;
  }

  BigCount total;
  BigCount real_toric;
  std::vector<ClassCounts> rows;
  if (opt.method == "diagram") {
    rows = diagram_rows(opt.m, j, opt.parallel, total, real_toric);
  } else if (opt.method == "formula") {
    total = closed_form(opt.m, j);
    real_toric = count_real_toric(opt.m, j, opt.parallel);
    for (const auto& cls : enumerate_classes(opt.m))
      rows.push_back({cls.word().str(), count_E_tilde_formula(cls, j), count_E_RT(cls, j)});
  } else if (opt.method == "oracle") {
    total = count_classes_bruteforce(opt.m, j, opt.parallel);
    real_toric = count_real_toric(opt.m, j, opt.parallel);
  } else {
    throw std::invalid_argument("--method must be diagram, formula, oracle or all");
  }
  if (opt.format == "json")
    return emit(opt, dump_json(census_json(opt.m, j, opt.method, total, real_toric, rows)),
                out, err);
  if (opt.format == "csv") return emit(opt, census_csv(rows), out, err);
  return emit(opt, total.to_string() + "\n", out, err);
}

int run_count_real_toric(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.m < 3) throw std::invalid_argument("missing or invalid --m");
  JTuple j = parse_j_for(opt, opt.m);
  if (opt.format == "text") {
    BigCount real_toric = count_real_toric(opt.m, j, opt.parallel);
    return emit(opt, real_toric.to_string() + "\n", out, err);
  }
  BigCount total;
  BigCount real_toric;
  auto rows = diagram_rows(opt.m, j, opt.parallel, total, real_toric);
  if (opt.format == "json")
    return emit(opt, dump_json(census_json(opt.m, j, "diagram", total, real_toric, rows)),
                out, err);
  return emit(opt, census_csv(rows), out, err);
}

int run_formula(const Options& opt, std::ostream& out, std::ostream& err) {
  Options forced = opt;
  forced.method = "formula";
  return run_count_covers(forced, out, err);
}

int run_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  require_format(opt, {"text", "json"});
  if (opt.m < 3) throw std::invalid_argument("missing or invalid --m");
  JTuple j = parse_j_for(opt, opt.m);
  VerifyReport report = verify(opt.m, j, opt.parallel);
  int emitted = emit(opt,
                     opt.format == "json" ? dump_json(verify_json(report))
                                          : verify_text(report),
                     out, err);
  if (emitted != kOk) return emitted;
  return report.agree ? kOk : kDisagreement;
}

int run_puzzle(const Options& opt, std::ostream& out, std::ostream& err) {
  require_format(opt, {"text", "json"});
  DJClass cls = parse_lambda(opt);
  JTuple j = parse_j_for(opt, cls.size());
  auto bases = slot_bases(j);

  // --e1/--e2 entries fill the next open slot with a matching base;
  // unfilled slots keep the empty e-set.
  ESeq seq;
  for (int b : bases) seq.entries.emplace_back(b, VertexSet(cls.size(), 0));
  std::vector<bool> filled(bases.size(), false);
  std::vector<std::string> texts = opt.e1_texts;
  texts.insert(texts.end(), opt.e2_texts.begin(), opt.e2_texts.end());
  for (const std::string& text : texts) {
    ESet e = parse_eset(text, cls.size());
    bool placed = false;
    for (std::size_t i = 0; i < bases.size(); ++i) {
      if (!filled[i] && bases[i] == e.base) {
        seq.entries[i] = e;
        filled[i] = true;
        placed = true;
        break;
      }
    }
    if (!placed)
      throw std::invalid_argument("no remaining slot with base " + std::to_string(e.base) +
                                  " for e-set " + text);
  }

  PuzzleGrid grid = reconstruct_puzzle(cls, seq, j);
  if (opt.format == "json") {
    ordered_json report;
    report["lambda"] = cls.word().str();
    report["j"] = j.entries;
    ordered_json nodes = ordered_json::array();
    for (std::size_t rank = 0; rank < grid.node_count(); ++rank) {
      ordered_json item;
      item["alpha"] = grid.alpha_of(rank);
      item["class"] = grid.classes[rank].word().str();
      nodes.push_back(std::move(item));
    }
    report["nodes"] = std::move(nodes);
    return emit(opt, dump_json(report), out, err);
  }
  std::string payload;
  for (std::size_t rank = 0; rank < grid.node_count(); ++rank) {
    auto alpha = grid.alpha_of(rank);
    payload += "(";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (i) payload += ",";
      payload += std::to_string(alpha[i]);
    }
    payload += ") " + grid.classes[rank].word().str() + "\n";
  }
  return emit(opt, payload, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact census of small covers and real toric manifolds over wedged polygons"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", opt.out_path, "write output to a file");
    sub->add_option("--parallel", opt.parallel, "worker count")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--timing", opt.timing, "print elapsed milliseconds to stderr");
  };

  CLI::App* nodes = app.add_subcommand("nodes", "list the D-J classes over P_m");
  nodes->add_option("--m", opt.m, "polygon size")->required();
  nodes->add_flag("--dot", opt.dot, "emit the nontrivial-edge graph in DOT format");
  add_common(nodes);

  CLI::App* edges = app.add_subcommand("edges", "list classes adjacent to a class");
  edges->add_option("--lambda", opt.lambda_text, "class word")->required();
  edges->add_option("--p", opt.p, "base vertex (all vertices when omitted)");
  add_common(edges);

  CLI::App* related = app.add_subcommand("related", "relatedness kind of two e-sets");
  related->add_option("--lambda", opt.lambda_text, "class word")->required();
  related->add_option("--e1", opt.e1_texts, "first e-set, p:{s1,s2,...}")->required();
  related->add_option("--e2", opt.e2_texts, "second e-set")->required();
  add_common(related);

  CLI::App* square = app.add_subcommand("square", "fourth node of the realizable square");
  square->add_option("--lambda", opt.lambda_text, "class word")->required();
  square->add_option("--e1", opt.e1_texts, "first e-set")->required();
  square->add_option("--e2", opt.e2_texts, "second e-set")->required();
  add_common(square);

  CLI::App* covers = app.add_subcommand("count-covers", "count small covers over P_m(J)");
  covers->add_option("--m", opt.m, "polygon size")->required();
  covers->add_option("--j", opt.j_text, "wedge vector, comma separated")->required();
  covers->add_option("--method", opt.method, "diagram|formula|oracle|all");
  add_common(covers);

  CLI::App* rt = app.add_subcommand("count-real-toric",
                                    "count real toric manifolds over P_m(J)");
  rt->add_option("--m", opt.m, "polygon size")->required();
  rt->add_option("--j", opt.j_text, "wedge vector")->required();
  add_common(rt);

  CLI::App* formula = app.add_subcommand("formula", "closed-form count (m = 4, 5, 6)");
  formula->add_option("--m", opt.m, "polygon size")->required();
  formula->add_option("--j", opt.j_text, "wedge vector")->required();
  add_common(formula);

  CLI::App* verify_cmd = app.add_subcommand("verify", "diagram vs formula vs brute force");
  verify_cmd->add_option("--m", opt.m, "polygon size")->required();
  verify_cmd->add_option("--j", opt.j_text, "wedge vector")->required();
  add_common(verify_cmd);

  CLI::App* puzzle = app.add_subcommand("puzzle", "reconstruct the class grid over G(J)");
  puzzle->add_option("--lambda", opt.lambda_text, "class word")->required();
  puzzle->add_option("--j", opt.j_text, "wedge vector")->required();
  puzzle->add_option("--e1", opt.e1_texts, "slot e-sets (repeatable)");
  puzzle->add_option("--e2", opt.e2_texts, "slot e-sets (repeatable)");
  add_common(puzzle);

  std::vector<const char*> argv;
  argv.push_back("polycover");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  auto started = std::chrono::steady_clock::now();
  int code = kInternalError;
  try {
    if (nodes->parsed()) code = run_nodes(opt, out, err);
    else if (edges->parsed()) code = run_edges(opt, out, err);
    else if (related->parsed()) code = run_related(opt, out, err);
    else if (square->parsed()) code = run_square(opt, out, err);
    else if (covers->parsed()) code = run_count_covers(opt, out, err);
    else if (rt->parsed()) code = run_count_real_toric(opt, out, err);
    else if (formula->parsed()) code = run_formula(opt, out, err);
    else if (verify_cmd->parsed()) code = run_verify(opt, out, err);
    else if (puzzle->parsed()) code = run_puzzle(opt, out, err);
  } catch (const guard_error& e) {
    err << "refused: " << e.what() << "\n";
    return kGuardRefusal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  if (opt.timing) {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    err << "elapsed_ms=" << elapsed.count() << "\n";
  }
  return code;
}

}  // namespace polycover
