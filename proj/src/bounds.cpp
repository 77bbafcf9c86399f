#include "bounds.hpp"

#include <sstream>

#include "graph.hpp"
#include "ladder.hpp"

namespace vg {

std::string to_string(MuSource s) {
  switch (s) {
    case MuSource::Computed: return "computed";
    case MuSource::AssumedZero: return "assumed-zero";
    case MuSource::Supplied: return "supplied";
  }
  return "?";
}

MuSource parse_mu_source(const std::string& s) {
  if (s == "computed") return MuSource::Computed;
  if (s == "assumed-zero") return MuSource::AssumedZero;
  if (s == "supplied") return MuSource::Supplied;
  throw std::invalid_argument("unknown provenance '" + s + "'");
}

std::string to_string(const MuKey& k) {
  return "mu(" + std::to_string(k.m) + "," + std::to_string(k.u) + "," + std::to_string(k.o) + "," +
         std::to_string(k.e) + ")";
}

void MuTable::set(const MuKey& k, long value, MuSource source) {
  if (value < 0) throw PreconditionError("negative value for " + to_string(k));
  entries_[k] = {value, source};
}

const MuEntry& MuTable::at(const MuKey& k) const {
  auto it = entries_.find(k);
  if (it == entries_.end()) throw StructureError("missing entry " + to_string(k));
  return it->second;
}

std::string MuTable::to_rows() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries_)
    out << k.m << ',' << k.u << ',' << k.o << ',' << k.e << ',' << v.value << ',' << to_string(v.source) << '\n';
  return out.str();
}

MuTable MuTable::from_rows(const std::string& text) {
  MuTable t;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw ParseError("expected m,u,o,e,value,provenance", no);
    try {
      MuKey k{std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3])};
      t.set(k, std::stol(f[4]), parse_mu_source(f[5]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), no);
    } catch (const std::out_of_range&) {
      throw ParseError("number out of range", no);
    }
  }
  return t;
}

long sqnum(long n) {
  if (n < 0) return 0;
  return (n * n + 6) / 12;
}

long lambda0_dim_bound(long n) { return 1 + sqnum(n); }

long closed_form_bb(int m, int u) {
  // floor(x/12 + 3/2) = floor((x + 18)/12), floor(x/24 + 1) = floor((x + 24)/24)
  auto sq = [](long x) { return x * x; };
  switch (u) {
    case 0: return (sq(m - 1) + 18) / 12;
    case 2: return (sq(m - 2) + 18) / 12;
    case 4: return (sq(2L * m - 7) + 24) / 24;
    case 6: return (sq(2L * m - 11) + 18) / 12;
    default: throw PreconditionError("closed forms exist for u in {0,2,4,6} only");
  }
}

std::map<MuKey, long> bound_coefficients(int m, int u) {
  if (u < 0 || m < u) throw PreconditionError("the bound needs m >= u >= 0");
  std::map<MuKey, long> c;
  for (int j = u; j <= m; ++j) {
    c[{j, u, 0, 0}] += 1 + sqnum(m - j);
    for (const auto& d : t_set(j, u))
      if (d.f == 0 && d.o + d.e >= 1) c[{j, u, d.o, d.e}] += sqnum(m - j + 3);
  }
  return c;
}

namespace {

long correction(int m, int u) { return u == 4 ? sqnum(m - 6) : 0; }

}  // namespace

long bb_bound(int m, int u, const MuTable& mu) {
  long total = correction(m, u);
  for (const auto& [k, c] : bound_coefficients(m, u)) total += c * mu.at(k).value;
  return total;
}

std::vector<MuKey> SandwichReport::nonzero() const {
  std::vector<MuKey> out;
  for (const auto& r : rows)
    if (r.forced >= 1) out.push_back(r.key);
  return out;
}

SandwichReport sandwich(int m, int u, long exact_bb, const MuTable& mu) {
  SandwichReport rep;
  rep.m = m;
  rep.u = u;
  rep.exact = exact_bb;
  rep.bound = bb_bound(m, u, mu);
  rep.feasible = rep.bound >= exact_bb;
  const long slack = rep.bound - exact_bb;
  for (const auto& [k, c] : bound_coefficients(m, u)) {
    SandwichRow r{k, c, mu.at(k).value, 0};
    if (c > 0 && rep.feasible) r.forced = std::max(0L, r.upper - slack / c);
    rep.rows.push_back(r);
  }
  return rep;
}

}  // namespace vg
