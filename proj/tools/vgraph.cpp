#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vgraph/vgraph.h"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kError = 1, kUsage = 2, kParse = 3, kCapacity = 4, kInfeasible = 5 };

struct Failure : std::runtime_error {
  Failure(vg_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  vg_status status;
};

int exit_code(vg_status s) {
  switch (s) {
    case VG_ERR_PARSE: return kParse;
    case VG_ERR_CAPACITY: return kCapacity;
    case VG_ERR_ARGUMENT:
    case VG_ERR_PRECONDITION: return kUsage;
    default: return kError;
  }
}

void check(vg_status s) {
  if (s != VG_OK) throw Failure(s, vg_last_error());
}

template <class T>
struct CArray {
  T* p = nullptr;
  size_t n = 0;
  ~CArray() { vg_free(p); }
  T* begin() const { return p; }
  T* end() const { return p + n; }
};

struct CString {
  char* p = nullptr;
  ~CString() { vg_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Range {
  int lo = 0, hi = -1;
};

Range parse_range(const std::string& s) {
  Range r;
  try {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(s);
    } else {
      r.lo = std::stoi(s.substr(0, dots));
      r.hi = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected <a> or <a>..<b>, got '" + s + "'");
  }
  if (r.lo < 0) throw CLI::ValidationError("range", "negative bound in '" + s + "'");
  return r;
}

std::string hex64(uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string join(const std::vector<std::string>& v, char sep = ',') {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + v[i];
  return out;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string cell; std::getline(ss, cell, sep);) out.push_back(cell);
  return out;
}

// Append-only row files tables/<name>.rows. The first line is a header
// "# digest,<columns>"; every row starts with the corpus digest. Writes go
// through a temporary file and a rename.
class Store {
 public:
  Store(std::optional<fs::path> dir, std::string digest) : dir_(std::move(dir)), digest_(std::move(digest)) {}

  bool enabled() const { return dir_.has_value(); }

  // Rows whose fields after the digest start with `key`.
  std::vector<std::vector<std::string>> find(const std::string& name, const std::vector<std::string>& key) const {
    std::vector<std::vector<std::string>> out;
    if (!dir_) return out;
    std::ifstream in(path(name));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto f = split(line);
      if (f.size() < key.size() + 1 || f[0] != digest_) continue;
      if (std::equal(key.begin(), key.end(), f.begin() + 1)) out.emplace_back(f.begin() + 1, f.end());
    }
    return out;
  }

  void put(const std::string& name, const std::string& header, const std::vector<std::vector<std::string>>& rows) {
    if (!dir_ || rows.empty()) return;
    fs::create_directories(dir_->string() + "/tables");
    const fs::path p = path(name);
    std::string old;
    if (std::ifstream in(p); in) {
      std::stringstream ss;
      ss << in.rdbuf();
      old = ss.str();
    }
    if (old.empty()) old = "# digest," + header + "\n";
    for (const auto& r : rows) old += digest_ + "," + join(r) + "\n";
    const fs::path tmp = p.string() + ".tmp" + std::to_string(::getpid());
    {
      std::ofstream out(tmp);
      out << old;
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, p);
  }

 private:
  fs::path path(const std::string& name) const { return *dir_ / "tables" / (name + ".rows"); }
  std::optional<fs::path> dir_;
  std::string digest_;
};

// Aligned text, or comma-separated rows with a header line.
class Report {
 public:
  Report(std::vector<std::string> header, bool rows) : header_(std::move(header)), rows_(rows) {}
  void add(std::vector<std::string> r) { body_.push_back(std::move(r)); }
  void print(std::ostream& os) const {
    if (rows_) {
      os << join(header_) << "\n";
      for (const auto& r : body_) os << join(r) << "\n";
      return;
    }
    std::vector<size_t> w(header_.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = header_[i].size();
    for (const auto& r : body_)
      for (size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (size_t i = 0; i < r.size(); ++i) {
        std::string cell = r[i];
        if (i + 1 < r.size()) cell.resize(w[i], ' ');
        s += (i ? "  " : "") + cell;
      }
      os << s << "\n";
    };
    line(header_);
    for (const auto& r : body_) line(r);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> body_;
  bool rows_;
};

struct Env {
  vg_context* ctx = nullptr;
  std::unique_ptr<Store> store;
  bool rows = false;
  bool capacity_hit = false;
  ~Env() { vg_context_destroy(ctx); }
};

std::string str(uint64_t x) { return std::to_string(x); }

struct Cell {
  std::vector<std::string> values;
  std::string provenance;
};

// dim of BB or B with caching; values diagrams,relations,rank,dim.
std::optional<Cell> dim_cell(Env& env, vg_space space, int m, int u) {
  const std::string name = space == VG_SPACE_BB ? "dim_BB" : "dim_B";
  const std::vector<std::string> key{str(m), str(u)};
  if (auto hit = env.store->find(name, key); !hit.empty())
    return Cell{{hit[0].begin() + 2, hit[0].end()}, "cached"};
  vg_dim_result r{};
  const vg_status s = vg_dim(env.ctx, m, u, space, &r);
  if (s == VG_ERR_CAPACITY) {
    std::cerr << "capacity: " << vg_last_error() << "\n";
    env.capacity_hit = true;
    return std::nullopt;
  }
  check(s);
  std::vector<std::string> v{str(r.diagrams), str(r.relations), str(r.rank), str(r.dim)};
  std::vector<std::string> row = key;
  row.insert(row.end(), v.begin(), v.end());
  env.store->put(name, "m,u,diagrams,relations,rank,dim", {row});
  return Cell{v, "computed"};
}

long dim_value(Env& env, vg_space space, int m, int u) {
  auto c = dim_cell(env, space, m, u);
  if (!c) throw Failure(VG_ERR_CAPACITY, "dimension at (" + str(m) + "," + str(u) + ") exceeds the caps");
  return std::stol(c->values[3]);
}

struct FiltrationCell {
  std::vector<std::vector<std::string>> rows;  // f,o,e,diagrams,dimF,dimG
  std::string provenance;
};

std::optional<FiltrationCell> filtration_cell(Env& env, int m, int u) {
  const std::vector<std::string> key{str(m), str(u)};
  if (auto hit = env.store->find("filtration", key); !hit.empty()) {
    FiltrationCell c{{}, "cached"};
    for (auto& r : hit) c.rows.emplace_back(r.begin() + 2, r.end());
    return c;
  }
  CArray<vg_filtration_row> a;
  const vg_status s = vg_filtration(env.ctx, m, u, &a.p, &a.n);
  if (s == VG_ERR_CAPACITY) {
    std::cerr << "capacity: " << vg_last_error() << "\n";
    env.capacity_hit = true;
    return std::nullopt;
  }
  check(s);
  FiltrationCell c{{}, "computed"};
  std::vector<std::vector<std::string>> store_rows;
  for (const auto& r : a) {
    std::vector<std::string> v{str(r.f), str(r.o), str(r.e), str(r.diagrams), str(r.dim_f), str(r.dim_g)};
    std::vector<std::string> row = key;
    row.insert(row.end(), v.begin(), v.end());
    store_rows.push_back(row);
    c.rows.push_back(v);
  }
  // an empty T(m,u) still gets a marker row so the cell counts as cached
  if (store_rows.empty()) store_rows.push_back({str(m), str(u), "-", "-", "-", "0", "0", "0"});
  env.store->put("filtration", "m,u,f,o,e,diagrams,dimF,dimG", store_rows);
  return c;
}

std::optional<Cell> mu_cell(Env& env, int m, int u, int o, int e) {
  const std::vector<std::string> key{str(m), str(u), str(o), str(e)};
  if (auto hit = env.store->find("mu", key); !hit.empty()) return Cell{{hit[0].begin() + 4, hit[0].end()}, "cached"};
  vg_mu_result r{};
  const vg_status s = vg_mu(env.ctx, m, u, o, e, &r);
  if (s == VG_ERR_CAPACITY) {
    std::cerr << "capacity: " << vg_last_error() << "\n";
    env.capacity_hit = true;
    return std::nullopt;
  }
  check(s);
  std::vector<std::string> v{str(r.graphs), str(r.allowed), str(r.relations), str(r.rank), str(r.value)};
  std::vector<std::string> row = key;
  row.insert(row.end(), v.begin(), v.end());
  env.store->put("mu", "m,u,o,e,graphs,allowed,relations,rank,mu", {row});
  return Cell{v, "computed"};
}

std::vector<vg_delta> t_set(int m, int u) {
  CArray<vg_delta> a;
  check(vg_t_set(m, u, &a.p, &a.n));
  return {a.begin(), a.end()};
}

int finish(const Env& env) { return env.capacity_hit ? kCapacity : kOk; }

int cmd_dim(Env& env, const std::string& space_name, Range mr, Range ur) {
  const vg_space space = space_name == "B" ? VG_SPACE_B : VG_SPACE_BB;
  Report rep({"space", "m", "u", "diagrams", "relations", "rank", "dim", "provenance"}, env.rows);
  for (int u = ur.lo; u <= ur.hi; ++u)
    for (int m = mr.lo; m <= mr.hi; ++m) {
      if (auto c = dim_cell(env, space, m, u)) {
        std::vector<std::string> r{space_name, str(m), str(u)};
        r.insert(r.end(), c->values.begin(), c->values.end());
        r.push_back(c->provenance);
        rep.add(r);
      } else {
        rep.add({space_name, str(m), str(u), "-", "-", "-", "skipped(capacity)", "-"});
      }
    }
  rep.print(std::cout);
  return finish(env);
}

int cmd_filtration(Env& env, Range mr, Range ur) {
  Report rep({"m", "u", "f", "o", "e", "diagrams", "dimF", "dimG", "provenance"}, env.rows);
  for (int u = ur.lo; u <= ur.hi; ++u)
    for (int m = mr.lo; m <= mr.hi; ++m) {
      auto c = filtration_cell(env, m, u);
      if (!c) {
        rep.add({str(m), str(u), "-", "-", "-", "-", "-", "skipped(capacity)", "-"});
        continue;
      }
      for (const auto& row : c->rows) {
        if (row[0] == "-") continue;
        std::vector<std::string> r{str(m), str(u)};
        r.insert(r.end(), row.begin(), row.end());
        r.push_back(c->provenance);
        rep.add(r);
      }
    }
  rep.print(std::cout);
  return finish(env);
}

int cmd_mu(Env& env, Range mr, int u, std::optional<int> o, std::optional<int> e, const std::string& exp) {
  Report rep({"m", "u", "o", "e", "graphs", "allowed", "relations", "rank", "mu", "provenance"}, env.rows);
  vg_mu_table* table = nullptr;
  check(vg_mu_table_create(&table));
  std::unique_ptr<vg_mu_table, void (*)(vg_mu_table*)> hold(table, vg_mu_table_destroy);
  for (int m = mr.lo; m <= mr.hi; ++m) {
    std::vector<std::pair<int, int>> cells;
    if (o && e) cells.push_back({*o, *e});
    else
      for (const auto& d : t_set(m, u))
        if (d.f == 0 && (!o || d.o == *o) && (!e || d.e == *e)) cells.push_back({d.o, d.e});
    for (auto [co, ce] : cells) {
      if (auto c = mu_cell(env, m, u, co, ce)) {
        std::vector<std::string> r{str(m), str(u), str(co), str(ce)};
        r.insert(r.end(), c->values.begin(), c->values.end());
        r.push_back(c->provenance);
        rep.add(r);
        check(vg_mu_table_set(table, m, u, co, ce, std::stol(c->values[4]), VG_MU_COMPUTED));
      } else {
        rep.add({str(m), str(u), str(co), str(ce), "-", "-", "-", "-", "skipped(capacity)", "-"});
      }
    }
  }
  rep.print(std::cout);
  if (!exp.empty()) {
    CString text;
    check(vg_mu_table_rows(table, &text.p));
    std::ofstream out(exp);
    out << "# m,u,o,e,value,provenance\n" << text.str();
    if (!out) throw std::runtime_error("cannot write " + exp);
  }
  return finish(env);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure(VG_ERR_PARSE, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_bound(Env& env, Range mr, int u, const std::string& mu_source, bool missing_zero) {
  Report rep({"m", "u", "bound", "exact", "sharp", "closed_form", "mu_sources"}, env.rows);
  Report forced({"bound_m", "m", "u", "o", "e", "coefficient", "upper", "forced"}, false);
  bool infeasible = false;
  if (mr.lo < u) std::cerr << "note: the bound is defined for m >= u; starting at m = " << u << "\n";
  for (int m = std::max(mr.lo, u); m <= mr.hi; ++m) {
    vg_mu_table* table = nullptr;
    check(vg_mu_table_create(&table));
    std::unique_ptr<vg_mu_table, void (*)(vg_mu_table*)> hold(table, vg_mu_table_destroy);
    if (mu_source != "computed") check(vg_mu_table_load(table, read_file(mu_source).c_str()));
    CArray<vg_bound_term> terms;
    check(vg_bound_terms(m, u, &terms.p, &terms.n));
    std::map<std::string, int> sources;
    CString have;
    check(vg_mu_table_rows(table, &have.p));
    const std::string have_rows = "\n" + have.str();
    for (const auto& t : terms) {
      const std::string prefix = "\n" + join({str(t.m), str(t.u), str(t.o), str(t.e)}) + ",";
      if (mu_source != "computed" && have_rows.find(prefix) != std::string::npos) {
        const auto at = have_rows.find(prefix) + prefix.size();
        const auto line = split(have_rows.substr(at, have_rows.find('\n', at) - at));
        ++sources[line.size() > 1 ? line[1] : "supplied"];
        continue;
      }
      if (mu_source == "computed") {
        auto c = mu_cell(env, t.m, t.u, t.o, t.e);
        if (!c) throw Failure(VG_ERR_CAPACITY, "mu cell exceeds the caps");
        check(vg_mu_table_set(table, t.m, t.u, t.o, t.e, std::stol(c->values[4]), VG_MU_COMPUTED));
        ++sources["computed"];
      } else if (missing_zero) {
        check(vg_mu_table_set(table, t.m, t.u, t.o, t.e, 0, VG_MU_ASSUMED_ZERO));
        ++sources["assumed-zero"];
        std::cerr << "assumed zero: mu(" << t.m << "," << t.u << "," << t.o << "," << t.e << ")\n";
      }
    }
    int64_t bound = 0;
    check(vg_bb_bound(m, u, table, &bound));
    const long exact = dim_value(env, VG_SPACE_BB, m, u);
    vg_sandwich_summary sum{};
    CArray<vg_sandwich_row> rows;
    check(vg_sandwich(m, u, exact, table, &sum, &rows.p, &rows.n));
    int64_t cf = 0;
    const std::string closed = vg_closed_form_bb(m, u, &cf) == VG_OK ? str(cf) : "-";
    std::vector<std::string> src;
    for (const auto& [k, n] : sources) src.push_back(k + ":" + str(n));
    rep.add({str(m), str(u), str(bound), str(exact), sum.feasible ? (bound == exact ? "sharp" : "not-sharp") : "INFEASIBLE",
             closed, src.empty() ? "-" : join(src, ' ')});
    if (!sum.feasible) {
      infeasible = true;
      std::cerr << "INCONSISTENCY: bound " << bound << " < exact " << exact << " at (" << m << "," << u << ")\n";
    }
    for (const auto& r : rows)
      if (r.forced > 0) forced.add({str(m), str(r.m), str(r.u), str(r.o), str(r.e), str(r.coefficient), str(r.upper), str(r.forced)});
  }
  rep.print(std::cout);
  if (!env.rows) {
    std::cout << "\nforced lower bounds\n";
    forced.print(std::cout);
  }
  if (infeasible) return kInfeasible;
  return finish(env);
}

int cmd_certify(Env& env, const std::string& path) {
  const std::string text = read_file(path);
  vg_diagram** ds = nullptr;
  size_t n = 0;
  check(vg_diagram_parse_all(text.c_str(), &ds, &n));
  struct Hold {
    vg_diagram** d;
    size_t n;
    ~Hold() {
      for (size_t i = 0; i < n; ++i) vg_diagram_destroy(d[i]);
      vg_free(d);
    }
  } hold{ds, n};
  Report rep({"record", "m", "u", "result", "algebra", "weight"}, env.rows);
  for (size_t i = 0; i < n; ++i) {
    int m = 0, u = 0, found = 0;
    check(vg_diagram_degree(ds[i], &m, &u));
    CString cert;
    check(vg_certify(ds[i], &found, &cert.p));
    if (!found) {
      rep.add({str(i + 1), str(m), str(u), "unknown", "-", "-"});
      continue;
    }
    const std::string c = cert.str();
    const bool gl = c.find("algebra gl") != std::string::npos;
    CString w;
    check(vg_weight(ds[i], gl ? VG_ALGEBRA_GL : VG_ALGEBRA_SO, &w.p));
    rep.add({str(i + 1), str(m), str(u), "nonzero", gl ? "gl" : "so", w.str()});
    if (!env.rows) std::cout << c;
  }
  rep.print(std::cout);
  return kOk;
}

struct TableEntry {
  int f, o, e, m, u;
};

// Non-trivial filtration quotients expected at desk scale, with their
// families in f.
std::vector<TableEntry> expected_entries(int max_m) {
  std::vector<TableEntry> out;
  auto add = [&](int f, int o, int e, int m, int u) {
    if (m <= max_m) out.push_back({f, o, e, m, u});
  };
  add(0, 0, 0, 1, 0);
  add(0, 0, 0, 2, 2);
  for (int f = 0; f <= 4; ++f) add(f, 0, 1, 4 + 2 * f, 4);
  add(0, 0, 0, 6, 6);
  for (int f = 0; f <= 2; ++f) add(f, 0, 2, 7 + 2 * f, 6);
  for (int f = 0; f <= 2; ++f) add(f, 1, 0, 8 + 2 * f, 6);
  for (int f = 0; f <= 1; ++f) add(f, 2, 0, 10 + 2 * f, 6);
  return out;
}

int cmd_reproduce(Env& env, int max_m, const std::string& data_dir) {
  int status = kOk;
  std::cout << "== dim BB(m,2) against the closed form\n";
  Report sharp({"m", "dim_BB(m,2)", "closed_form", "dim_BB(m-1,0)", "match"}, env.rows);
  for (int m = 1; m <= max_m; ++m) {
    const long d = dim_value(env, VG_SPACE_BB, m, 2);
    int64_t cf = 0;
    check(vg_closed_form_bb(m, 2, &cf));
    const long shifted = m >= 2 ? dim_value(env, VG_SPACE_BB, m - 1, 0) : -1;
    const bool ok = d == cf && (m < 2 || shifted == d);
    if (!ok) status = kError;
    sharp.add({str(m), str(d), str(cf), m >= 2 ? str(shifted) : "-", ok ? "yes" : "NO"});
  }
  sharp.print(std::cout);

  std::cout << "\n== non-trivial filtration quotients G(f,o,e)B(m,u)\n";
  const auto expected = expected_entries(max_m);
  Report found({"u", "m", "f", "o", "e", "dimG", "expected"}, env.rows);
  int extra = 0, missing = 0;
  for (int u : {0, 2, 4, 6}) {
    const int top = u == 0 ? std::min(max_m, 7) : max_m;
    for (int m = std::max(1, u / 2); m <= top; ++m) {
      auto c = filtration_cell(env, m, u);
      if (!c) {
        found.add({str(u), str(m), "-", "-", "-", "skipped(capacity)", "-"});
        continue;
      }
      for (const auto& r : c->rows) {
        if (r[0] == "-") continue;
        const int f = std::stoi(r[0]), o = std::stoi(r[1]), e = std::stoi(r[2]);
        const long g = std::stol(r[5]);
        bool exp = false;
        for (const auto& t : expected) exp |= t.f == f && t.o == o && t.e == e && t.m == m && t.u == u;
        if (g != 0 || exp) found.add({str(u), str(m), str(f), str(o), str(e), str(g), exp ? "1" : "0"});
        if (g != 0 && !exp) ++extra;
        if (exp && g != 1) ++missing;
      }
    }
  }
  found.print(std::cout);
  std::cout << "extra non-trivial: " << extra << ", expected but not found: " << missing << "\n";
  if (extra || missing) status = kError;

  std::cout << "\n== weight-system certificates\n";
  Report certs({"diagram", "result", "algebra"}, env.rows);
  for (const char* name : {"theta", "bubble22"}) {
    const std::string text = read_file(data_dir + "/diagrams/" + name + ".diagram");
    vg_diagram* d = nullptr;
    check(vg_diagram_parse(text.c_str(), &d));
    std::unique_ptr<vg_diagram, void (*)(vg_diagram*)> hold(d, vg_diagram_destroy);
    int ok = 0;
    CString cert;
    check(vg_certify(d, &ok, &cert.p));
    const std::string c = cert.str();
    certs.add({name, ok ? "nonzero" : "unknown", ok ? (c.find("algebra gl") != std::string::npos ? "gl" : "so") : "-"});
    if (!ok) status = kError;
  }
  certs.print(std::cout);
  if (env.capacity_hit) return kCapacity;
  return status;
}

std::optional<fs::path> cache_dir(bool disabled) {
  if (disabled) return std::nullopt;
  if (const char* c = std::getenv("VGRAPH_CACHE"); c && *c) return fs::path(c);
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "vgraph";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "vgraph";
  return std::nullopt;
}

std::string default_data_dir() {
  if (const char* d = std::getenv("VGRAPH_DATA"); d && *d) return d;
  return VGRAPH_DEFAULT_DATA;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimensions of diagram spaces, their ladder filtration and Feynman graph bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string data_dir = default_data_dir();
  bool rows = false, no_cache = false;
  size_t max_diagrams = 10'000'000, max_relations = 10'000'000;
  app.add_option("--data", data_dir, "relation corpus directory (schemas/, feynman/, patterns/)");
  app.add_flag("--rows", rows, "machine-readable comma-separated rows");
  app.add_flag("--no-cache", no_cache, "ignore and do not write the table store");
  app.add_option("--max-diagrams", max_diagrams, "cap on enumerated graphs per cell")->check(CLI::PositiveNumber);
  app.add_option("--max-relations", max_relations, "cap on relation vectors per cell")->check(CLI::PositiveNumber);

  std::string m_arg = "1", u_arg = "2", space = "BB", mu_arg = "computed", file, exp;
  std::optional<int> o_arg, e_arg;
  bool missing_zero = false;
  int max_m = 8;

  auto* dim = app.add_subcommand("dim", "dimension of BB(m,u) or B(m,u)");
  dim->add_option("--space", space)->check(CLI::IsMember({"BB", "B"}));
  dim->add_option("--m", m_arg, "degree or range a..b")->required();
  dim->add_option("--u", u_arg, "legs or range a..b")->required();

  auto* filt = app.add_subcommand("filtration", "ladder filtration of B(m,u)");
  filt->add_option("--m", m_arg)->required();
  filt->add_option("--u", u_arg)->required();

  auto* mu = app.add_subcommand("mu", "Feynman graph quotient dimensions mu(m,u,o,e)");
  mu->add_option("--m", m_arg)->required();
  mu->add_option("--u", u_arg)->required();
  mu->add_option("--o", o_arg);
  mu->add_option("--e", e_arg);
  mu->add_option("--export", exp, "write m,u,o,e,value,provenance rows");

  auto* bound = app.add_subcommand("bound", "upper bound for dim BB(m,u) against the exact value");
  bound->add_option("--m", m_arg)->required();
  bound->add_option("--u", u_arg)->required();
  bound->add_option("--mu", mu_arg, "'computed' or a row file");
  bound->add_flag("--assume-zero", missing_zero, "treat mu entries absent from the file as zero");

  auto* cert = app.add_subcommand("certify", "weight-system certificates of nonvanishing in BB");
  cert->add_option("file", file)->required();

  auto* repro = app.add_subcommand("reproduce", "desk-scale reproduction of the dimension tables");
  repro->add_option("--max-m", max_m)->check(CLI::Range(1, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  try {
    Env env;
    env.rows = rows;
    check(vg_context_create(data_dir.c_str(), &env.ctx));
    check(vg_context_set_capacity(env.ctx, max_diagrams, max_relations));
    env.store = std::make_unique<Store>(cache_dir(no_cache), hex64(vg_context_digest(env.ctx)));
    if (*dim) return cmd_dim(env, space, parse_range(m_arg), parse_range(u_arg));
    if (*filt) return cmd_filtration(env, parse_range(m_arg), parse_range(u_arg));
    if (*mu) {
      const Range ur = parse_range(u_arg);
      if (ur.lo != ur.hi) throw CLI::ValidationError("--u", "mu takes a single u");
      return cmd_mu(env, parse_range(m_arg), ur.lo, o_arg, e_arg, exp);
    }
    if (*bound) {
      const Range ur = parse_range(u_arg);
      if (ur.lo != ur.hi) throw CLI::ValidationError("--u", "bound takes a single u");
      return cmd_bound(env, parse_range(m_arg), ur.lo, mu_arg, missing_zero);
    }
    if (*cert) return cmd_certify(env, file);
    if (*repro) return cmd_reproduce(env, max_m, data_dir);
  } catch (const Failure& f) {
    std::cerr << "error (" << vg_status_name(f.status) << "): " << f.what() << "\n";
    return exit_code(f.status);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kOk;
}
