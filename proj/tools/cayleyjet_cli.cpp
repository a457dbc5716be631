// cayleyjet: jets, Cayley structure and Seshadri constants of smooth lattice
// polytopes from the command line. Exit codes: 0 success, 1 usage or input
// errors, 2 when a verification finds inconsistent conditions.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "cayleyjet/corpus.hpp"
#include "cayleyjet/io.hpp"
#include "cayleyjet/report.hpp"

namespace fs = std::filesystem;
using namespace cayleyjet;

namespace {

constexpr int exit_violation = 2;

struct Common {
  std::optional<unsigned> max_k;
  int width_bound = 5;
  int s1_bound = 2;
  int cayley_bound = 3;
  std::string strict_mode = "equal-dim";
  std::string format = "text";
  std::uint64_t seed = 0;

  VerifyOptions verify() const {
    VerifyOptions v;
    v.max_k = max_k;
    v.seshadri.width_bound = width_bound;
    v.seshadri.s1.bound = s1_bound;
    v.cayley.box_bound = cayley_bound;
    v.cayley.strict_mode = strict_mode == "project" ? StrictMode::Project : StrictMode::EqualDim;
    return v;
  }
};

void add_common(CLI::App* app, Common& c, bool analysis = true) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "records"}));
  if (!analysis) return;
  app->add_option("--max-k", c.max_k, "Cap for the generic jet order search (default: narrowest box side)");
  app->add_option("--width-bound", c.width_bound, "Box bound for the lattice width search")->check(CLI::Range(1, 50));
  app->add_option("--s1-bound", c.s1_bound, "Box bound for the s1 direction search")->check(CLI::Range(1, 10));
  app->add_option("--cayley-bound", c.cayley_bound, "Box bound for Cayley witness candidates")
      ->check(CLI::Range(1, 20));
  app->add_option("--strict-mode", c.strict_mode, "Slice comparison for strictness")
      ->check(CLI::IsMember({"equal-dim", "project"}));
}

std::string display_name(const std::string& path) { return fs::path(path).filename().string(); }

void print(const AnalysisReport& r, const Common& c) {
  if (c.format == "records") std::cout << render_record(r) << '\n';
  else std::cout << render_text(r);
}

LatticePolytope require_smooth(const LatticePolytope& p) {
  const auto check = is_smooth(p);
  if (!check) throw Error(ErrorKind::NotSmooth, "not smooth at vertex " + to_string(p.vertices()[*check.failing_vertex]));
  return p;
}

// ---- gen ----

std::vector<long long> need(const std::vector<long long>& args, std::size_t lo, std::size_t hi, const char* usage) {
  if (args.size() < lo || args.size() > hi) throw Error(ErrorKind::InvalidParams, std::string("usage: ") + usage);
  return args;
}

LatticePolytope generate(const std::string& kind, const std::vector<long long>& a, const std::vector<std::string>& files,
                         unsigned order, std::uint64_t seed) {
  if (kind == "simplex") {
    auto v = need(a, 2, 2, "gen simplex N K");
    if (v[0] <= 0) throw Error(ErrorKind::InvalidParams, "simplex needs N >= 1");
    return gen::simplex(std::size_t(v[0]), v[1]);
  }
  if (kind == "box") return gen::box(need(a, 1, 8, "gen box A1 .. An"));
  if (kind == "cross") {
    auto v = need(a, 2, 16, "gen cross P1 M1 .. Pn Mn");
    if (v.size() % 2) throw Error(ErrorKind::InvalidParams, "cross takes pairs of extents");
    std::vector<long long> plus, minus;
    for (std::size_t i = 0; i < v.size(); i += 2) {
      plus.push_back(v[i]);
      minus.push_back(v[i + 1]);
    }
    return gen::cross(plus, minus);
  }
  if (kind == "delpezzo6") {
    need(a, 0, 0, "gen delpezzo6");
    return gen::delpezzo6();
  }
  if (kind == "hirzebruch") {
    auto v = need(a, 3, 3, "gen hirzebruch A B R");
    return gen::hirzebruch(v[0], v[1], v[2]);
  }
  if (kind == "chopped-simplex" || kind == "chopped-cube") {
    auto v = need(a, 3, 3, "gen chopped-simplex|chopped-cube N K C");
    if (v[0] <= 0) throw Error(ErrorKind::InvalidParams, "needs N >= 1");
    return kind == "chopped-simplex" ? gen::chopped_simplex(std::size_t(v[0]), v[1], v[2])
                                     : gen::chopped_cube(std::size_t(v[0]), v[1], v[2]);
  }
  if (kind == "cayley") {
    need(a, 0, 0, "gen cayley --order S FILE0 FILE1 ...");
    if (files.size() < 2) throw Error(ErrorKind::InvalidParams, "cayley needs at least two slice files");
    std::vector<LatticePolytope> slices;
    for (const auto& f : files) slices.push_back(parse_polytope_file(f));
    return construct_cayley(slices, order);
  }
  if (kind == "transform") {
    need(a, 0, 0, "gen transform FILE --seed N");
    if (files.size() != 1) throw Error(ErrorKind::InvalidParams, "transform takes exactly one file");
    return gen::unimodular_image(parse_polytope_file(files[0]), seed);
  }
  throw Error(ErrorKind::InvalidParams, "unknown generator '" + kind + "'");
}

void write_corpus(const std::string& dir, std::uint64_t seed) {
  fs::create_directories(dir);
  for (const auto& e : standard_corpus(seed)) {
    std::ofstream out(fs::path(dir) / (e.name + ".poly"));
    emit_polytope(e.polytope, out, e.name + " (" + e.family + ")");
    if (!out) throw Error(ErrorKind::InvalidParams, "cannot write into '" + dir + "'");
  }
}

// ---- batch ----

struct BatchItem {
  std::string output;
  bool violation = false;
  bool error = false;
};

std::string verdict_flags(const EquivalenceVerdict& v) {
  std::string s;
  for (const auto& c : v.conditions) s += c.value ? (*c.value ? 'T' : 'F') : '?';
  return s;
}

BatchItem batch_one(const std::string& path, std::optional<unsigned> k, const Common& c) {
  BatchItem item;
  const auto name = display_name(path);
  try {
    const auto p = parse_polytope_file(path);
    AnalysisOptions opt;
    opt.jets = opt.cayley = opt.seshadri = false;
    opt.verify = c.verify();
    if (k) opt.verify_orders = {*k};
    else
      for (unsigned s = 1; s <= default_jet_bound(p); ++s) opt.verify_orders.push_back(s);
    const auto r = analyze(p, name, opt);
    for (const auto& v : r.verdicts) item.violation |= v.violation();
    if (c.format == "records") {
      item.output = render_record(r) + '\n';
    } else {
      std::ostringstream out;
      out << name << (r.summary.smooth ? "" : "  skipped: not smooth");
      for (const auto& v : r.verdicts)
        out << "  k=" << v.k << ' ' << verdict_flags(v) << (v.consistent ? "" : " VIOLATION");
      item.output = out.str() + '\n';
    }
  } catch (const Error& e) {
    item.error = true;
    item.output = name + "  error: " + e.what() + '\n';
  }
  return item;
}

int run_batch(const std::string& dir, std::optional<unsigned> k, unsigned jobs, const Common& c) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".poly") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorKind::InvalidParams, "no .poly files in '" + dir + "'");

  // Workers claim files by index; output is printed in file order afterwards.
  std::vector<BatchItem> items(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) items[i] = batch_one(files[i], k, c);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, std::min<unsigned>(jobs, unsigned(files.size()))); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  bool violation = false, error = false;
  for (const auto& it : items) {
    std::cout << it.output;
    violation |= it.violation;
    error |= it.error;
  }
  if (c.format == "text")
    std::cout << files.size() << " files, " << (violation ? "VIOLATIONS FOUND" : "no violations")
              << (error ? ", some files failed" : "") << '\n';
  return violation ? exit_violation : error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jets, Cayley structure and Seshadri constants of smooth lattice polytopes"};
  app.require_subcommand(1);
  Common c;
  std::string file;
  std::optional<unsigned> k;

  auto* analyze_cmd = app.add_subcommand("analyze", "Full report: summary, jets, Cayley orders, Seshadri constants");
  analyze_cmd->add_option("file", file, "Polytope file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("-k", k, "Also evaluate the equivalent conditions for this order");
  add_common(analyze_cmd, c);

  std::size_t length = 2;
  bool strict_only = false;
  auto* cayley_cmd = app.add_subcommand("cayley", "Cayley decompositions");
  cayley_cmd->add_option("file", file, "Polytope file")->required()->check(CLI::ExistingFile);
  cayley_cmd->add_option("-k", k, "Order to test (default: every order up to the narrowest box side)");
  cayley_cmd->add_option("--length", length, "Number of slices")->check(CLI::Range(2, 16));
  cayley_cmd->add_flag("--strict", strict_only, "Search for a strict decomposition of any length");
  add_common(cayley_cmd, c);

  auto* seshadri_cmd = app.add_subcommand("seshadri", "Seshadri constants at fixpoints and the general point");
  seshadri_cmd->add_option("file", file, "Polytope file")->required()->check(CLI::ExistingFile);
  add_common(seshadri_cmd, c);

  auto* verify_cmd = app.add_subcommand("verify", "Check that the five characterizations of order k agree");
  verify_cmd->add_option("file", file, "Polytope file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("-k", k, "Order")->required()->check(CLI::PositiveNumber);
  add_common(verify_cmd, c);

  std::string kind;
  std::vector<long long> params;
  std::vector<std::string> gen_files;
  unsigned order = 1;
  std::string out_dir;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated polytope to stdout");
  gen_cmd->add_option("kind", kind,
                      "simplex, box, cross, delpezzo6, hirzebruch, chopped-simplex, chopped-cube, cayley, transform, "
                      "corpus")
      ->required();
  gen_cmd->add_option("params", params, "Integer parameters");
  gen_cmd->add_option("--file", gen_files, "Input polytope files (cayley slices, transform input)");
  gen_cmd->add_option("--order", order, "Cayley order")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out", out_dir, "Target directory for 'corpus'");
  gen_cmd->add_option("--seed", c.seed, "Seed for randomized generators");

  std::string dir;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* batch_cmd = app.add_subcommand("batch", "Verify every .poly file in a directory");
  batch_cmd->add_option("dir", dir, "Directory")->required()->check(CLI::ExistingDirectory);
  batch_cmd->add_option("-k", k, "Order (default: every order up to the narrowest box side)")
      ->check(CLI::PositiveNumber);
  batch_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  add_common(batch_cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen_cmd) {
      if (kind == "corpus") {
        if (out_dir.empty()) throw Error(ErrorKind::InvalidParams, "corpus needs --out DIR");
        write_corpus(out_dir, c.seed);
        return 0;
      }
      emit_polytope(generate(kind, params, gen_files, order, c.seed), std::cout, kind);
      return 0;
    }
    if (*batch_cmd) return run_batch(dir, k, jobs, c);

    const auto p = parse_polytope_file(file);
    AnalysisOptions opt;
    opt.verify = c.verify();
    if (*analyze_cmd) {
      if (k) opt.verify_orders = {*k};
      print(analyze(p, display_name(file), opt), c);
      return 0;
    }
    if (*cayley_cmd) {
      AnalysisReport r;
      r.name = display_name(file);
      r.summary = summarize(p);
      std::vector<unsigned> orders;
      if (k) orders = {*k};
      else
        for (unsigned s = 1; s <= default_jet_bound(p); ++s) orders.push_back(s);
      for (auto s : orders) {
        std::optional<CayleyDecomposition> d;
        if (strict_only) d = find_strict_decomposition(p, s, opt.verify.cayley);
        else if (length == 2) d = detect_cayley(p, s, opt.verify.cayley);
        else if (length - 1 <= p.dim()) d = detect_cayley_general(p, s, unsigned(length - 1), opt.verify.cayley);
        r.cayley.push_back({s, std::move(d)});
      }
      print(r, c);
      return 0;
    }
    if (*seshadri_cmd) {
      require_smooth(p);
      opt.jets = opt.cayley = false;
      print(analyze(p, display_name(file), opt), c);
      return 0;
    }
    if (*verify_cmd) {
      require_smooth(p);
      opt.jets = opt.cayley = opt.seshadri = false;
      opt.verify_orders = {*k};
      const auto r = analyze(p, display_name(file), opt);
      print(r, c);
      return r.verdicts.front().violation() ? exit_violation : 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
