#include "spectral_chroma/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "json_util.hpp"
#include "spectral_chroma/chain.hpp"
#include "spectral_chroma/errors.hpp"
#include "spectral_chroma/hoffman.hpp"
#include "spectral_chroma/theta.hpp"

namespace spectral_chroma {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

const char* const kCsvHeader =
    "name,n,m,alpha,theta,theta_complement,chi_f,chi_f_rational,chi,hoffman_adj,ratio_adj,h_lo,h_hi,chain_ok,seconds";

struct Config {
  std::string graph6;
  std::string graph6_file;
  std::string dimacs;
  std::string edges;
  std::vector<std::string> family;
  bool corpus = false;
  double k = 0.0;
  int m = 0;
  std::string weights;
  int budget = 0;  // 0 = command default
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  bool no_timestamp = false;
  int jobs = 0;
  bool witness = false;
};

struct Input {
  std::string name;
  Graph graph;
};

// Reals in reports carry 9 significant digits.
double sig9(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

json matrix_json(const SymMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) r.push_back(sig9(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << text;
}

long long parse_integer(const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InputError("expected an integer, got '" + s + "'");
  return v;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw InputError("expected a number, got '" + s + "'");
  return v;
}

std::vector<std::vector<long long>> cartesian(const std::vector<std::vector<long long>>& axes) {
  std::vector<std::vector<long long>> out{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<long long>> next;
    for (const auto& prefix : out)
      for (long long v : axis) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

// "kind p1 p2 ..." with ranges; erdos-renyi takes n [p [seed]].
std::vector<FamilySpec> expand_family(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw InputError("--family needs a kind");
  const FamilyKind kind = parse_family_kind(tokens[0]);
  std::vector<FamilySpec> out;
  if (kind == FamilyKind::erdos_renyi) {
    if (tokens.size() < 2 || tokens.size() > 4) throw InputError("erdos-renyi takes n [p [seed]]");
    const double p = tokens.size() > 2 ? parse_real(tokens[2]) : 0.5;
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("erdos-renyi: p must lie in [0, 1]");
    const auto seeds = tokens.size() > 3 ? expand_range(tokens[3]) : std::vector<long long>{0};
    for (long long n : expand_range(tokens[1]))
      for (long long s : seeds) {
        if (s < 0) throw InputError("erdos-renyi: seed must be nonnegative");
        FamilySpec f{kind, {n}, p, static_cast<std::uint64_t>(s)};
        out.push_back(f);
      }
    return out;
  }
  std::vector<std::vector<long long>> axes;
  for (std::size_t i = 1; i < tokens.size(); ++i) axes.push_back(expand_range(tokens[i]));
  for (auto& params : cartesian(axes)) out.push_back({kind, params});
  return out;
}

std::vector<Input> load_inputs(const Config& c, bool many) {
  const int sources = !c.graph6.empty() + !c.graph6_file.empty() + !c.dimacs.empty() + !c.edges.empty() +
                      !c.family.empty() + c.corpus;
  if (sources != 1) throw InputError("give exactly one of --graph6, --graph6-file, --dimacs, --edges, --family, --corpus");
  std::vector<Input> in;
  if (!c.graph6.empty()) {
    in.push_back({"g6-" + sanitize(c.graph6), parse_graph6(c.graph6)});
  } else if (!c.graph6_file.empty()) {
    const std::string text = read_file(c.graph6_file);
    const std::string stem = sanitize(fs::path(c.graph6_file).stem().string());
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (line.empty()) continue;
      in.push_back({stem + "-" + std::to_string(lineno), parse_graph6(line)});
    }
  } else if (!c.dimacs.empty()) {
    in.push_back({sanitize(fs::path(c.dimacs).stem().string()), parse_dimacs(read_file(c.dimacs))});
  } else if (!c.edges.empty()) {
    in.push_back({sanitize(fs::path(c.edges).stem().string()), parse_edge_list(read_file(c.edges))});
  } else if (c.corpus) {
    for (auto& g : builtin_corpus()) in.push_back({g.name, std::move(g.graph)});
  } else {
    for (const FamilySpec& f : expand_family(c.family)) in.push_back({f.name(), generate(f)});
  }
  if (in.empty()) throw InputError("no graphs in input");
  if (!many && in.size() != 1)
    throw InputError("this command takes a single graph; input describes " + std::to_string(in.size()));
  return in;
}

WeightVector load_weights(const std::string& path, std::size_t n) {
  if (path.empty()) return WeightVector(n, 1.0);
  const std::string text = read_file(path);
  WeightVector w;
  std::size_t offset = 0;
  while (offset < text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(offset, end - offset);
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos) {
      const auto last = line.find_last_not_of(" \t\r");
      const std::string tok = line.substr(first, last - first + 1);
      char* stop = nullptr;
      const double v = std::strtod(tok.c_str(), &stop);
      if (stop != tok.c_str() + tok.size()) throw ParseError("weights: not a real number '" + tok + "'", offset + first);
      w.push_back(v);
    }
    offset = end + 1;
  }
  check_weights(w, n);
  return w;
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

HBracketOptions bracket_options(const Config& c) {
  HBracketOptions o;
  if (c.budget > 0) o.z_budget.iterations = c.budget;
  o.seed = c.seed;
  return o;
}

const LoCertificate* best_lo(const HBracket& b) {
  const LoCertificate* best = nullptr;
  for (const LoCertificate& c : b.lo_certificates)
    if (!best || c.m > best->m) best = &c;
  return best;
}

// Certificate files for the bracket, under <out>.cert/.
std::vector<std::string> write_certificates(const std::string& out, const std::string& name, const Graph& g,
                                            const HBracket& b) {
  std::vector<std::string> paths;
  if (out.empty()) return paths;
  const fs::path dir = out + ".cert";
  fs::create_directories(dir);
  if (b.hi_certificate) {
    const fs::path p = dir / (name + ".theorem2.json");
    write_file(p, theorem2_certificate_json(g, *b.hi_certificate));
    paths.push_back(p.string());
  }
  if (const LoCertificate* lo = best_lo(b)) {
    const fs::path p = dir / (name + ".hoffman-lower.json");
    write_file(p, lo_certificate_json(g, *lo));
    paths.push_back(p.string());
  }
  return paths;
}

json chi_f_json(const FractionalChromatic& f) {
  if (f.rational) return f.rational->str();
  return sig9(f.value);
}

json lo_certs_json(const HBracket& b) {
  json a = json::array();
  for (const LoCertificate& c : b.lo_certificates)
    a.push_back({{"m", c.m}, {"kind", to_string(c.kind)}, {"S", sig9(c.value)}});
  return a;
}

json chain_json(const ChainReport& r, const Graph& g, const std::vector<std::string>& certs, bool stamp) {
  json j;
  j["schema"] = 1;
  j["command"] = "bounds";
  j["name"] = r.name;
  j["graph6"] = encode_graph6(g);
  j["n"] = r.n;
  j["m"] = r.m;
  j["alpha"] = r.alpha;
  j["theta"] = sig9(r.theta);
  j["theta_complement"] = sig9(r.theta_complement);
  j["chi_f"] = chi_f_json(r.chi_f);
  j["chi_f_value"] = sig9(r.chi_f.value);
  j["chi"] = r.chi;
  j["hoffman_adj"] = r.hoffman_adj ? json(*r.hoffman_adj) : json(nullptr);
  j["ratio_adj"] = r.ratio_adj ? json(sig9(*r.ratio_adj)) : json(nullptr);
  j["h_bracket"] = {r.bracket.lo, r.bracket.hi};
  j["lo_certificates"] = lo_certs_json(r.bracket);
  j["chain_ok"] = r.ok;
  j["violations"] = r.violations;
  j["certificates"] = certs;
  if (stamp) {
    json t;
    for (const auto& [k, v] : r.timings) t[k] = sig9(v);
    j["timings"] = t;
    j["seconds"] = sig9(r.seconds);
    j["timestamp"] = timestamp();
  }
  return j;
}

std::string csv_row(const ChainReport& r, bool stamp) {
  std::ostringstream os;
  os << r.name << ',' << r.n << ',' << r.m << ',' << r.alpha << ',' << fmt(r.theta) << ',' << fmt(r.theta_complement)
     << ',' << fmt(r.chi_f.value) << ',' << (r.chi_f.rational ? r.chi_f.rational->str() : "") << ',' << r.chi << ','
     << (r.hoffman_adj ? std::to_string(*r.hoffman_adj) : "") << ',' << (r.ratio_adj ? fmt(*r.ratio_adj) : "") << ','
     << r.bracket.lo << ',' << r.bracket.hi << ',' << (r.ok ? "ok" : "violation") << ','
     << (stamp ? fmt(r.seconds) : "");
  return os.str();
}

// Report sink: the --out file when given, else the stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw InputError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw InputError("unsupported --format '" + f + "' for this command");
}

int cmd_bounds(const Config& c, std::ostream& out) {
  const std::string format = c.format.empty() ? "text" : c.format;
  require_format(format, {"json", "csv", "text"});
  const Input in = load_inputs(c, false).front();
  const ChainReport r = compute_chain(in.graph, bracket_options(c), in.name);
  const auto certs = write_certificates(c.out, in.name, in.graph, r.bracket);
  Sink sink(c.out, out);
  if (format == "json") {
    *sink << chain_json(r, in.graph, certs, !c.no_timestamp).dump(2) << "\n";
  } else if (format == "csv") {
    *sink << kCsvHeader << "\n" << csv_row(r, !c.no_timestamp) << "\n";
  } else {
    *sink << describe(r);
    for (const std::string& p : certs) *sink << "  certificate " << p << "\n";
  }
  return r.ok ? exit_ok : exit_chain;
}

int cmd_theta_k(const Config& c, std::ostream& out) {
  const std::string format = c.format.empty() ? "text" : c.format;
  require_format(format, {"json", "csv", "text"});
  const Input in = load_inputs(c, false).front();
  const WeightVector w = load_weights(c.weights, in.graph.order());
  SdpOptions opts;
  if (c.budget > 0) opts.max_iterations = c.budget;
  const auto t0 = Clock::now();
  const ThetaKResult r = theta_k(in.graph, w, c.k, opts);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  Sink sink(c.out, out);
  if (format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = "theta-k";
    j["name"] = in.name;
    j["n"] = in.graph.order();
    j["m"] = in.graph.size();
    j["k"] = sig9(c.k);
    j["weights"] = json::array();
    for (double x : w) j["weights"].push_back(sig9(x));
    j["value"] = sig9(r.value);
    j["primal_value"] = sig9(r.primal_value);
    j["dual_value"] = sig9(r.dual_value);
    j["gap"] = sig9(r.gap);
    j["relative_gap"] = sig9(r.relative_gap);
    if (c.witness) {
      j["witness"] = {{"X", matrix_json(r.dual_x)},
                      {"Z", matrix_json(r.primal_z)},
                      {"Y", matrix_json(r.primal_y)},
                      {"eta", sig9(r.eta)}};
    }
    if (!c.no_timestamp) {
      j["seconds"] = sig9(secs);
      j["timestamp"] = timestamp();
    }
    *sink << j.dump(2) << "\n";
  } else if (format == "csv") {
    *sink << "name,n,m,k,value,primal_value,dual_value,gap,relative_gap\n"
          << in.name << ',' << in.graph.order() << ',' << in.graph.size() << ',' << fmt(c.k) << ',' << fmt(r.value)
          << ',' << fmt(r.primal_value) << ',' << fmt(r.dual_value) << ',' << fmt(r.gap) << ','
          << fmt(r.relative_gap) << "\n";
  } else {
    *sink << "theta_" << fmt(c.k) << "(" << in.name << ") = " << fmt(r.value) << "\n"
          << "  primal " << fmt(r.primal_value) << ", dual " << fmt(r.dual_value) << ", gap " << fmt(r.gap)
          << " (relative " << fmt(r.relative_gap) << ")\n";
    if (c.witness) {
      auto dump = [&](const char* label, const SymMatrix& m) {
        *sink << "  " << label << ":\n";
        for (std::size_t i = 0; i < m.size(); ++i) {
          *sink << "   ";
          for (std::size_t j = 0; j < m.size(); ++j) *sink << ' ' << fmt(m(i, j));
          *sink << "\n";
        }
      };
      dump("X", r.dual_x);
      dump("Z", r.primal_z);
      dump("Y", r.primal_y);
      *sink << "  eta: " << fmt(r.eta) << "\n";
    }
  }
  return exit_ok;
}

int cmd_hbracket(const Config& c, std::ostream& out) {
  const std::string format = c.format.empty() ? "text" : c.format;
  require_format(format, {"json", "csv", "text"});
  const Input in = load_inputs(c, false).front();
  const Graph& g = in.graph;
  const HBracketOptions opts = bracket_options(c);
  const auto t0 = Clock::now();
  const HBracket b = h_bracket(g, opts);

  std::optional<ZSearchResult> probe;
  std::optional<LoCertificate> probe_cert;
  if (c.m != 0) {
    if (c.m < 2 || static_cast<std::size_t>(c.m) > g.order())
      throw InputError("--m must lie in [2, n]");
    if (g.size() == 0) throw InputError("--m needs a graph with an edge");
    probe = z_search(g, c.m, opts.z_budget, c.seed);
    if (probe->S > kLoCertificateTol) {
      probe_cert = LoCertificate{LoCertificate::Kind::z_search, c.m, probe->Z, {}, probe->S};
      verify_lo_certificate(g, *probe_cert);
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();

  auto certs = write_certificates(c.out, in.name, g, b);
  if (probe_cert && !c.out.empty()) {
    const fs::path p = fs::path(c.out + ".cert") / (in.name + ".hoffman-lower-m" + std::to_string(c.m) + ".json");
    write_file(p, lo_certificate_json(g, *probe_cert));
    certs.push_back(p.string());
  }

  Sink sink(c.out, out);
  if (format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = "hbracket";
    j["name"] = in.name;
    j["n"] = g.order();
    j["m"] = g.size();
    j["h_bracket"] = {b.lo, b.hi};
    j["theta_complement"] = sig9(b.theta_complement);
    j["theta_ceiling"] = b.theta_ceiling;
    j["chi_f"] = chi_f_json(b.chi_f);
    j["chi_f_value"] = sig9(b.chi_f.value);
    j["lo_certificates"] = lo_certs_json(b);
    if (b.hi_certificate)
      j["hi_certificate"] = {{"kind", "theorem2"},
                             {"trace", sig9(b.hi_certificate->trace_value)},
                             {"objective", sig9(b.hi_certificate->objective_value)},
                             {"pass", b.hi_certificate->pass()}};
    if (probe)
      j["probe"] = {{"level", c.m}, {"S", sig9(probe->S)}, {"certified", probe_cert.has_value()}};
    j["certificates"] = certs;
    if (!c.no_timestamp) {
      j["seconds"] = sig9(secs);
      j["timestamp"] = timestamp();
    }
    *sink << j.dump(2) << "\n";
  } else if (format == "csv") {
    *sink << "name,n,m,h_lo,h_hi,theta_complement,chi_f,chi_f_rational\n"
          << in.name << ',' << g.order() << ',' << g.size() << ',' << b.lo << ',' << b.hi << ','
          << fmt(b.theta_complement) << ',' << fmt(b.chi_f.value) << ','
          << (b.chi_f.rational ? b.chi_f.rational->str() : "") << "\n";
  } else {
    *sink << "h(" << in.name << ") in [" << b.lo << ", " << b.hi << "]\n"
          << "  theta(complement) = " << fmt(b.theta_complement) << "\n"
          << "  chi_f = " << (b.chi_f.rational ? b.chi_f.rational->str() : fmt(b.chi_f.value)) << "\n";
    for (const LoCertificate& lc : b.lo_certificates)
      *sink << "  lower certificate: m=" << lc.m << " via " << to_string(lc.kind) << ", S(m)=" << fmt(lc.value)
            << "\n";
    if (probe)
      *sink << "  probe m=" << c.m << ": best S(m) = " << fmt(probe->S)
            << (probe_cert ? " (certifies h >= " + std::to_string(c.m + 1) + ")" : "") << "\n";
    for (const std::string& p : certs) *sink << "  certificate " << p << "\n";
  }
  return exit_ok;
}

// Names in the first column of an existing batch file.
std::set<std::string> finished_rows(const std::string& path) {
  std::set<std::string> done;
  std::ifstream f(path);
  if (!f) return done;
  std::string line;
  if (!std::getline(f, line)) return done;
  if (line != kCsvHeader) throw InputError("'" + path + "' exists but is not a batch file with the expected columns");
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    done.insert(line.substr(0, line.find(',')));
  }
  return done;
}

int default_jobs() {
  if (const char* env = std::getenv("SPECTRAL_CHROMA_JOBS")) {
    const long long j = parse_integer(env);
    if (j < 1) throw InputError("SPECTRAL_CHROMA_JOBS must be positive");
    return static_cast<int>(j);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int cmd_batch(const Config& c, std::ostream& out, std::ostream& err) {
  if (!c.format.empty()) require_format(c.format, {"csv"});
  const std::vector<Input> inputs = load_inputs(c, true);
  const int jobs = c.jobs > 0 ? c.jobs : default_jobs();

  std::set<std::string> done;
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.out.empty()) {
    done = finished_rows(c.out);
    const bool fresh = !fs::exists(c.out) || fs::file_size(c.out) == 0;
    file.open(c.out, std::ios::binary | std::ios::app);
    if (!file) throw InputError("cannot write '" + c.out + "'");
    sink = &file;
    if (fresh) *sink << kCsvHeader << "\n" << std::flush;
  } else {
    *sink << kCsvHeader << "\n";
  }

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (!done.count(inputs[i].name)) todo.push_back(i);

  struct Slot {
    bool ready = false;
    std::string row;
    std::string error;
    int code = exit_ok;
  };
  std::vector<Slot> slots(todo.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  const HBracketOptions opts = bracket_options(c);

  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < todo.size();) {
      const Input& in = inputs[todo[t]];
      Slot s;
      try {
        const ChainReport r = compute_chain(in.graph, opts, in.name);
        write_certificates(c.out, in.name, in.graph, r.bracket);
        s.row = csv_row(r, !c.no_timestamp);
        if (!r.ok) {
          s.code = exit_chain;
          s.error = describe(r);
        }
      } catch (const InputError& e) {
        s.code = exit_input;
        s.error = e.what();
      } catch (const std::exception& e) {
        s.code = exit_solver;
        s.error = e.what();
      }
      s.ready = true;
      std::lock_guard lock(mu);
      slots[t] = std::move(s);
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(todo.size())));
  for (int i = 0; i < workers; ++i) pool.emplace_back(work);

  int code = exit_ok;
  for (std::size_t t = 0; t < todo.size(); ++t) {
    Slot s;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return slots[t].ready; });
      s = std::move(slots[t]);
    }
    const std::string& name = inputs[todo[t]].name;
    if (!s.row.empty()) *sink << s.row << "\n" << std::flush;
    if (!s.error.empty()) err << name << ": " << s.error << (s.error.back() == '\n' ? "" : "\n");
    code = std::max(code, s.code);
  }
  for (auto& th : pool) th.join();
  return code;
}

void add_input_options(CLI::App* sub, Config& c) {
  sub->add_option("--graph6", c.graph6, "graph in graph6 format");
  sub->add_option("--graph6-file", c.graph6_file, "file with one graph6 string per line");
  sub->add_option("--dimacs", c.dimacs, "DIMACS edge file");
  sub->add_option("--edges", c.edges, "edge list file, 0-indexed pairs");
  sub->add_option("--family", c.family, "family kind and parameters, ranges as a..b")->expected(1, -1);
  sub->add_flag("--corpus", c.corpus, "built-in verification corpus");
  sub->add_option("--seed", c.seed, "seed for randomized searches (default 0)");
  sub->add_option("--format", c.format, "json, csv or text");
  sub->add_option("--out", c.out, "report file; certificates go to <out>.cert/");
  sub->add_flag("--no-timestamp", c.no_timestamp, "omit timestamps and timings");
}

}  // namespace

std::vector<long long> expand_range(const std::string& token) {
  const auto dots = token.find("..");
  if (dots == std::string::npos) return {parse_integer(token)};
  const long long a = parse_integer(token.substr(0, dots));
  const long long b = parse_integer(token.substr(dots + 2));
  if (a > b) throw InputError("empty range '" + token + "'");
  if (b - a > 100000) throw InputError("range '" + token + "' is too long");
  std::vector<long long> out;
  for (long long v = a; v <= b; ++v) out.push_back(v);
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Spectral and combinatorial bounds on the chromatic number"};
  app.name("spectral-chroma");
  app.require_subcommand(1);

  CLI::App* bounds = app.add_subcommand("bounds", "all bounds and the chain verdict for one graph");
  add_input_options(bounds, c);
  bounds->add_option("--budget", c.budget, "z-search iterations per restart (default 500)");

  CLI::App* theta = app.add_subcommand("theta-k", "solve theta_k(G;w)");
  add_input_options(theta, c);
  theta->add_option("--k", c.k, "level k in [0, n]")->required();
  theta->add_option("--weights", c.weights, "file with one nonnegative weight per line");
  theta->add_option("--budget", c.budget, "interior-point iteration cap (default 200)");
  theta->add_flag("--witness", c.witness, "include the primal and dual witnesses");

  CLI::App* hb = app.add_subcommand("hbracket", "certified bracket for h(G)");
  add_input_options(hb, c);
  hb->add_option("--m", c.m, "also search for a certificate that h > m");
  hb->add_option("--budget", c.budget, "z-search iterations per restart (default 500)");

  CLI::App* batch = app.add_subcommand("batch", "chain values for many graphs as CSV");
  add_input_options(batch, c);
  batch->add_option("--budget", c.budget, "z-search iterations per restart (default 500)");
  batch->add_option("--jobs", c.jobs, "worker threads (default $SPECTRAL_CHROMA_JOBS or the core count)");

  std::vector<std::string> argv_store{"spectral-chroma"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_input;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(c, out);
    if (theta->parsed()) return cmd_theta_k(c, out);
    if (hb->parsed()) return cmd_hbracket(c, out);
    return cmd_batch(c, out, err);
  } catch (const ChainViolation& e) {
    err << "chain violation:\n" << e.what() << "\n";
    return exit_chain;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_chain;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_input;
  } catch (const fs::filesystem_error& e) {
    err << "file error: " << e.what() << "\n";
    return exit_input;
  } catch (const CertificationError& e) {
    err << "certification failed: " << e.what() << "\n";
    return exit_solver;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << "\n";
    return exit_solver;
  }
}

}  // namespace spectral_chroma
