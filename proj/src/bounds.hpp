#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace vg {

enum class MuSource { Computed, AssumedZero, Supplied };
std::string to_string(MuSource s);
MuSource parse_mu_source(const std::string& s);

struct MuKey {
  int m = 0, u = 0, o = 0, e = 0;
  friend auto operator<=>(const MuKey&, const MuKey&) = default;
};
std::string to_string(const MuKey& k);

struct MuEntry {
  long value = 0;
  MuSource source = MuSource::Computed;
};

// Upper bounds mu(m,u,o,e), with the origin of every entry. Text rows are
// "m,u,o,e,value,provenance".
class MuTable {
 public:
  void set(const MuKey& k, long value, MuSource source = MuSource::Computed);
  bool contains(const MuKey& k) const { return entries_.count(k) != 0; }
  // Throws StructureError naming the index when absent.
  const MuEntry& at(const MuKey& k) const;
  const std::map<MuKey, MuEntry>& entries() const { return entries_; }

  std::string to_rows() const;
  static MuTable from_rows(const std::string& text);

 private:
  std::map<MuKey, MuEntry> entries_;
};

// q_n = floor(n^2/12 + 1/2), and 0 for n < 0.
long sqnum(long n);
// 1 + q_n.
long lambda0_dim_bound(long n);

// Closed forms for u in {0,2,4,6}; u = 0 uses dim BB(m,0) = dim BB(m+1,2).
long closed_form_bb(int m, int u);

// The mu indices entering the bound for (m,u) with their coefficients.
std::map<MuKey, long> bound_coefficients(int m, int u);
// Upper bound for dim BB(m,u) from the mu table.
long bb_bound(int m, int u, const MuTable& mu);

struct SandwichRow {
  MuKey key;
  long coefficient = 0;
  long upper = 0;
  long forced = 0;  // least value keeping the bound >= exact, others fixed
};

struct SandwichReport {
  int m = 0, u = 0;
  long bound = 0, exact = 0;
  bool feasible = true;  // false when bound < exact: an inconsistency
  std::vector<SandwichRow> rows;
  // Entries proven nonzero: forced >= 1.
  std::vector<MuKey> nonzero() const;
};

SandwichReport sandwich(int m, int u, long exact_bb, const MuTable& mu);

}  // namespace vg
