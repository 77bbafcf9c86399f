#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "bounds.hpp"
#include "canon.hpp"
#include "feynman.hpp"
#include "ladder.hpp"
#include "quotient.hpp"
#include "vgraph/vgraph.h"
#include "weights.hpp"

struct vg_context {
  std::vector<vg::RelationSchema> schemas;
  std::vector<vg::RelationSchema> feynman;
  vg::CycleRules rules;
  std::size_t diagram_capacity = 10'000'000;
  vg::RelationOptions opt;
  std::unique_ptr<vg::DiagramEnumerator> en;
  std::unique_ptr<vg::FeynmanEnumerator> fe;
  std::uint64_t digest = 0;

  void reset_enumerators() {
    fe.reset();
    en = std::make_unique<vg::DiagramEnumerator>(diagram_capacity);
    fe = std::make_unique<vg::FeynmanEnumerator>(*en, 2 * diagram_capacity);
  }
  const vg::RelationSchema& need(const std::string& name) const {
    if (auto* s = vg::find_schema(schemas, name)) return *s;
    throw vg::StructureError("relation corpus lacks schema '" + name + "'");
  }
  std::vector<const vg::RelationSchema*> space(vg_space s) const {
    std::vector<const vg::RelationSchema*> out{&need("IHX")};
    if (s == VG_SPACE_B) out.push_back(&need("x"));
    return out;
  }
};

struct vg_diagram {
  vg::Graph g;
};

struct vg_mu_table {
  vg::MuTable t;
};

namespace {

thread_local std::string last_error;

vg_status fail(vg_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
vg_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return VG_OK;
  } catch (const vg::ParseError& e) {
    return fail(VG_ERR_PARSE, e.what());
  } catch (const vg::CapacityError& e) {
    return fail(VG_ERR_CAPACITY, e.what());
  } catch (const vg::PreconditionError& e) {
    return fail(VG_ERR_PRECONDITION, e.what());
  } catch (const vg::StructureError& e) {
    return fail(VG_ERR_STRUCTURE, e.what());
  } catch (const vg::RankError& e) {
    return fail(VG_ERR_RANK, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VG_ERR_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(VG_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class T>
T* alloc_array(std::size_t n) {
  T* p = static_cast<T*>(std::calloc(n ? n : 1, sizeof(T)));
  if (!p) throw std::bad_alloc();
  return p;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t mix(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return mix(h, s.size());
}

vg::MuSource from_c(vg_mu_source s) {
  switch (s) {
    case VG_MU_COMPUTED: return vg::MuSource::Computed;
    case VG_MU_ASSUMED_ZERO: return vg::MuSource::AssumedZero;
    case VG_MU_SUPPLIED: return vg::MuSource::Supplied;
  }
  throw vg::PreconditionError("unknown provenance");
}

}  // namespace

#define VG_REQUIRE(cond) \
  if (!(cond)) return fail(VG_ERR_ARGUMENT, "invalid argument: " #cond)

extern "C" {

const char* vg_last_error(void) { return last_error.c_str(); }

const char* vg_status_name(vg_status s) {
  switch (s) {
    case VG_OK: return "ok";
    case VG_ERR_ARGUMENT: return "argument";
    case VG_ERR_PARSE: return "parse";
    case VG_ERR_CAPACITY: return "capacity";
    case VG_ERR_PRECONDITION: return "precondition";
    case VG_ERR_STRUCTURE: return "structure";
    case VG_ERR_RANK: return "rank";
    case VG_ERR_MEMORY: return "memory";
    case VG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void vg_free(void* p) { std::free(p); }

vg_status vg_context_create(const char* data_dir, vg_context** out) {
  VG_REQUIRE(data_dir && out);
  *out = nullptr;
  return guarded([&] {
    auto ctx = std::make_unique<vg_context>();
    const std::string root = data_dir;
    ctx->schemas = vg::load_schemas(root + "/schemas");
    ctx->feynman = vg::load_schemas(root + "/feynman");
    ctx->rules = vg::CycleRules::load(root + "/patterns");
    std::uint64_t h = 1469598103934665603ull;
    const std::vector<vg::RelationSchema>* sets[] = {&ctx->schemas, &ctx->feynman, &ctx->rules.patterns()};
    for (const auto* set : sets)
      for (const auto& s : *set) h = mix(mix(h, s.name), s.digest());
    ctx->digest = h;
    ctx->need("IHX");
    ctx->need("x");
    ctx->reset_enumerators();
    *out = ctx.release();
  });
}

void vg_context_destroy(vg_context* ctx) { delete ctx; }

vg_status vg_context_set_capacity(vg_context* ctx, size_t diagrams, size_t relations) {
  VG_REQUIRE(ctx && diagrams > 0 && relations > 0);
  return guarded([&] {
    ctx->diagram_capacity = diagrams;
    ctx->opt.capacity = relations;
    ctx->reset_enumerators();
  });
}

uint64_t vg_context_digest(const vg_context* ctx) { return ctx ? ctx->digest : 0; }

size_t vg_schema_count(const vg_context* ctx) { return ctx ? ctx->schemas.size() : 0; }

const char* vg_schema_name(const vg_context* ctx, size_t i) {
  if (!ctx || i >= ctx->schemas.size()) return nullptr;
  return ctx->schemas[i].name.c_str();
}

vg_status vg_dim(vg_context* ctx, int m, int u, vg_space space, vg_dim_result* out) {
  VG_REQUIRE(ctx && out && m >= 0 && u >= 0);
  VG_REQUIRE(space == VG_SPACE_BB || space == VG_SPACE_B);
  return guarded([&] {
    const auto r = vg::quotient_dim(*ctx->en, m, u, ctx->space(space), {}, ctx->opt);
    *out = {r.diagrams, r.relations, r.rank, r.dim};
  });
}

vg_status vg_t_set(int m, int u, vg_delta** out, size_t* count) {
  VG_REQUIRE(out && count);
  *out = nullptr;
  *count = 0;
  return guarded([&] {
    const auto ts = vg::t_set(m, u);
    auto* a = alloc_array<vg_delta>(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) a[i] = {ts[i].f, ts[i].o, ts[i].e};
    *out = a;
    *count = ts.size();
  });
}

vg_status vg_filtration(vg_context* ctx, int m, int u, vg_filtration_row** rows, size_t* count) {
  VG_REQUIRE(ctx && rows && count && m >= 0 && u >= 0);
  *rows = nullptr;
  *count = 0;
  return guarded([&] {
    const auto r = vg::filtration_dims(*ctx->en, m, u, ctx->space(VG_SPACE_B), {}, ctx->opt);
    auto* a = alloc_array<vg_filtration_row>(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      a[i] = {r[i].index.f, r[i].index.o, r[i].index.e, r[i].diagrams, r[i].dim_f, r[i].dim_g};
    *rows = a;
    *count = r.size();
  });
}

vg_status vg_mu(vg_context* ctx, int m, int u, int o, int e, vg_mu_result* out) {
  VG_REQUIRE(ctx && out && m >= 0 && u >= 0 && o >= 0 && e >= 0);
  return guarded([&] {
    std::vector<const vg::RelationSchema*> rel{&ctx->need("IHX")};
    for (const auto& s : ctx->feynman) rel.push_back(&s);
    const auto r = vg::mu(*ctx->fe, {m, u, o, e}, rel, ctx->rules, {}, ctx->opt);
    *out = {r.graphs, r.allowed, r.relations, r.rank, r.value};
  });
}

int64_t vg_sqnum(int64_t n) { return vg::sqnum(n); }

vg_status vg_closed_form_bb(int m, int u, int64_t* out) {
  VG_REQUIRE(out);
  return guarded([&] { *out = vg::closed_form_bb(m, u); });
}

vg_status vg_mu_table_create(vg_mu_table** out) {
  VG_REQUIRE(out);
  return guarded([&] { *out = new vg_mu_table; });
}

void vg_mu_table_destroy(vg_mu_table* t) { delete t; }

vg_status vg_mu_table_set(vg_mu_table* t, int m, int u, int o, int e, int64_t value, vg_mu_source source) {
  VG_REQUIRE(t);
  return guarded([&] { t->t.set({m, u, o, e}, value, from_c(source)); });
}

vg_status vg_mu_table_load(vg_mu_table* t, const char* text) {
  VG_REQUIRE(t && text);
  return guarded([&] {
    const auto add = vg::MuTable::from_rows(text);
    for (const auto& [k, v] : add.entries()) t->t.set(k, v.value, v.source);
  });
}

vg_status vg_mu_table_rows(const vg_mu_table* t, char** text) {
  VG_REQUIRE(t && text);
  return guarded([&] { *text = dup(t->t.to_rows()); });
}

vg_status vg_bound_terms(int m, int u, vg_bound_term** terms, size_t* count) {
  VG_REQUIRE(terms && count);
  *terms = nullptr;
  *count = 0;
  return guarded([&] {
    const auto c = vg::bound_coefficients(m, u);
    auto* a = alloc_array<vg_bound_term>(c.size());
    std::size_t i = 0;
    for (const auto& [k, v] : c) a[i++] = {k.m, k.u, k.o, k.e, v};
    *terms = a;
    *count = c.size();
  });
}

vg_status vg_bb_bound(int m, int u, const vg_mu_table* t, int64_t* out) {
  VG_REQUIRE(t && out);
  return guarded([&] { *out = vg::bb_bound(m, u, t->t); });
}

vg_status vg_sandwich(int m, int u, int64_t exact, const vg_mu_table* t, vg_sandwich_summary* summary,
                      vg_sandwich_row** rows, size_t* count) {
  VG_REQUIRE(t && summary && rows && count && exact >= 0);
  *rows = nullptr;
  *count = 0;
  return guarded([&] {
    const auto rep = vg::sandwich(m, u, exact, t->t);
    auto* a = alloc_array<vg_sandwich_row>(rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      const auto& r = rep.rows[i];
      a[i] = {r.key.m, r.key.u, r.key.o, r.key.e, r.coefficient, r.upper, r.forced};
    }
    *summary = {rep.bound, rep.exact, rep.feasible ? 1 : 0};
    *rows = a;
    *count = rep.rows.size();
  });
}

vg_status vg_diagram_parse(const char* text, vg_diagram** out) {
  VG_REQUIRE(text && out);
  *out = nullptr;
  return guarded([&] { *out = new vg_diagram{vg::parse_graph(text)}; });
}

vg_status vg_diagram_parse_all(const char* text, vg_diagram*** out, size_t* count) {
  VG_REQUIRE(text && out && count);
  *out = nullptr;
  *count = 0;
  return guarded([&] {
    auto gs = vg::parse_graphs(text);
    std::vector<std::unique_ptr<vg_diagram>> held;
    for (auto& g : gs) held.push_back(std::make_unique<vg_diagram>(vg_diagram{std::move(g)}));
    auto* a = alloc_array<vg_diagram*>(held.size());
    for (std::size_t i = 0; i < held.size(); ++i) a[i] = held[i].release();
    *out = a;
    *count = held.size();
  });
}

vg_status vg_diagram_from_code(const char* hex, vg_diagram** out) {
  VG_REQUIRE(hex && out);
  *out = nullptr;
  return guarded([&] { *out = new vg_diagram{vg::decode(vg::from_hex(hex))}; });
}

void vg_diagram_destroy(vg_diagram* d) { delete d; }

vg_status vg_diagram_text(const vg_diagram* d, char** text) {
  VG_REQUIRE(d && text);
  return guarded([&] { *text = dup(vg::to_text(d->g)); });
}

vg_status vg_diagram_code(const vg_diagram* d, char** hex, int* sign) {
  VG_REQUIRE(d && hex);
  return guarded([&] {
    const auto c = vg::canonicalize(d->g);
    *hex = dup(vg::to_hex(c.code));
    if (sign) *sign = c.sign;
  });
}

vg_status vg_diagram_degree(const vg_diagram* d, int* m, int* u) {
  VG_REQUIRE(d && m && u);
  return guarded([&] {
    const auto fd = vg::feynman_degree(d->g);
    *m = fd.m;
    *u = fd.u;
  });
}

vg_status vg_diagram_delta(const vg_diagram* d, int* f, int* o, int* e) {
  VG_REQUIRE(d && f && o && e);
  return guarded([&] {
    if (!d->g.is_diagram()) throw vg::PreconditionError("ladders are counted on diagrams");
    const auto x = vg::delta(d->g);
    *f = x.f;
    *o = x.o;
    *e = x.e;
  });
}

vg_status vg_weight(const vg_diagram* d, vg_algebra a, char** poly) {
  VG_REQUIRE(d && poly && (a == VG_ALGEBRA_GL || a == VG_ALGEBRA_SO));
  return guarded([&] {
    const auto w = vg::symmetric_weight(d->g, a == VG_ALGEBRA_GL ? vg::Algebra::GL : vg::Algebra::SO);
    *poly = dup(w.to_string());
  });
}

vg_status vg_certify(const vg_diagram* d, int* found, char** certificate) {
  VG_REQUIRE(d && found && certificate);
  *found = 0;
  *certificate = nullptr;
  return guarded([&] {
    if (auto c = vg::certify_nonzero(d->g)) {
      *certificate = dup(c->to_text());
      *found = 1;
    }
  });
}

}  // extern "C"
