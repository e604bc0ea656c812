#include "diagtype/abfp.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>

#include <json.hpp>

namespace diagtype {

using linalg::Polynomial;

namespace {

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

struct Memo {
  std::shared_mutex mu;
  std::map<std::pair<int, std::vector<Edge>>, Polynomial> table;
};

Memo& memo() {
  static Memo m;
  return m;
}

Graph block_graph(const Graph& g, std::uint64_t block) {
  std::vector<int> vs;
  for (std::uint64_t m = block; m != 0; m &= m - 1) vs.push_back(std::countr_zero(m) + 1);
  return induced_subgraph(g, vs);
}

std::vector<int> block_vertices(std::uint64_t block) {
  std::vector<int> vs;
  for (std::uint64_t m = block; m != 0; m &= m - 1) vs.push_back(std::countr_zero(m) + 1);
  return vs;
}

}  // namespace

int face_rank(const Clustering& c) { return c.rank(); }

Polynomial face_betti_polynomial(const Clustering& c, const Graph& g) {
  Polynomial out{1};
  for (auto b : c.blocks) {
    const Graph h = block_graph(g, b);
    auto cert = indifference_ordering(h);
    if (!cert) throw NonIndifferenceFace("cluster is not an indifference graph", block_vertices(b));
    out *= betti_polynomial_hessenberg(cert->h);
  }
  return out;
}

Polynomial compute_A(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("compute_A needs a connected graph");
  if (g.n() == 1) return Polynomial{1};
  if (g.n() > 8) throw std::invalid_argument("compute_A supports at most 8 vertices");
  const Graph canon = canonical_form(g);
  const auto key = std::make_pair(canon.n(), canon.edges());
  {
    std::shared_lock lock(memo().mu);
    auto it = memo().table.find(key);
    if (it != memo().table.end()) return it->second;
  }
  const auto cert = indifference_ordering(canon);
  if (!cert) {
    std::vector<int> all(static_cast<std::size_t>(g.n()));
    for (int v = 1; v <= g.n(); ++v) all[static_cast<std::size_t>(v - 1)] = v;
    throw NonIndifferenceFace("compute_A needs an indifference graph", all);
  }
  const Polynomial b = betti_polynomial_hessenberg(cert->h);
  const Polynomial a =
      linalg::divide_exact(b - inter_polynomial(canon), Polynomial::linear_power(-1, canon.n() - 1));
  std::unique_lock lock(memo().mu);
  memo().table.emplace(key, a);
  return a;
}

Polynomial inter_polynomial(const Graph& g) {
  const auto lat = clusterings(g);
  const int n = g.n();
  Polynomial inter;
  for (const auto& c : lat.clusterings) {
    if (c.blocks.size() == 1) continue;
    std::uint64_t denom = 1;
    Polynomial term{1};
    for (auto b : c.blocks) {
      denom *= factorial(std::popcount(b));
      try {
        term *= compute_A(block_graph(g, b));
      } catch (const NonIndifferenceFace&) {
        throw NonIndifferenceFace("proper face with a non-indifference cluster", block_vertices(b));
      }
    }
    term *= mpz_class(static_cast<unsigned long>(factorial(n) / denom));
    term *= Polynomial::linear_power(-1, c.rank());
    inter += term;
  }
  return inter;
}

AbfpConsistency abfp_consistency_test(const Graph& g, long beta2, long beta4) {
  if (!g.connected()) throw std::invalid_argument("abfp_consistency_test needs a connected graph");
  AbfpConsistency out;
  out.beta2 = beta2;
  out.beta4 = beta4;
  const int m = static_cast<int>(g.edge_count());
  const int k = g.n() - 1;
  const int d = m - k;
  if (d < 0) throw std::invalid_argument("abfp_consistency_test: fewer edges than torus rank");
  const Polynomial inter = inter_polynomial(g);
  const std::size_t nb = static_cast<std::size_t>(m + 1), na = static_cast<std::size_t>(d + 1);
  out.unknowns = nb + na;
  const Polynomial tk = Polynomial::linear_power(-1, k);
  linalg::RationalMatrix a;
  linalg::RationalVector rhs;
  // Coefficient of t^j in B - A (t-1)^k equals that of Inter.
  const int top = std::max(m, inter.degree());
  for (int j = 0; j <= top; ++j) {
    linalg::RationalVector row(out.unknowns, 0);
    if (j <= m) row[static_cast<std::size_t>(j)] = 1;
    for (int i = 0; i <= d; ++i) {
      if (j - i >= 0 && j - i <= k) row[nb + static_cast<std::size_t>(i)] = -mpq_class(tk.coeff(j - i));
    }
    a.push_back(std::move(row));
    rhs.emplace_back(inter.coeff(j));
  }
  for (int i = 0; i < m - i; ++i) {
    linalg::RationalVector row(out.unknowns, 0);
    row[static_cast<std::size_t>(i)] = 1;
    row[static_cast<std::size_t>(m - i)] = -1;
    a.push_back(std::move(row));
    rhs.emplace_back(0);
  }
  out.equations = a.size();
  const auto base = linalg::solve_affine_system(a, rhs, out.unknowns);
  if (!base.consistent) {
    out.detail = "coefficient identity and duality admit no solution";
    return out;
  }
  out.family_dimension = base.basis.size();
  auto pin = [&](std::size_t var, long value) {
    linalg::RationalVector row(out.unknowns, 0);
    row[var] = 1;
    a.push_back(std::move(row));
    rhs.emplace_back(value);
  };
  pin(0, 1);
  if (m >= 1) pin(1, beta2);
  const auto fixed = linalg::solve_affine_system(a, rhs, out.unknowns);
  if (!fixed.consistent) {
    out.detail = "no solution with b_0 = 1 and b_1 = beta2";
    return out;
  }
  if (m < 2) {
    out.consistent = true;
    out.detail = "fewer than three Betti coefficients; beta4 unused";
    return out;
  }
  if (fixed.is_forced(2)) {
    out.forced_b2 = fixed.particular[2];
    out.consistent = *out.forced_b2 == beta4;
    out.detail = out.consistent ? "forced b_2 matches beta4" : "forced b_2 contradicts beta4";
    return out;
  }
  pin(2, beta4);
  out.consistent = linalg::solve_affine_system(a, rhs, out.unknowns).consistent;
  out.detail = out.consistent ? "b_2 = beta4 admits a completion" : "no completion with b_2 = beta4";
  return out;
}

std::string evidence_name(EvidenceKind k) {
  switch (k) {
    case EvidenceKind::ForbiddenSkeletonHomology:
      return "ForbiddenSkeletonHomology";
    case EvidenceKind::TotalBettiMismatch:
      return "TotalBettiMismatch";
    case EvidenceKind::AbfpInconsistency:
      return "AbfpInconsistency";
  }
  return "?";
}

namespace {

// H~_i of the order complex of (Cl_H)_r for i up to min(j+1, r-1), j = girth-1.
std::optional<SkeletonObstruction> skeleton_strategy(const Graph& h, const FormalityOptions& opts,
                                                     std::vector<std::string>& log) {
  const auto gi = girth(h);
  const int r = opts.skeleton_rank;
  int upto = r - 1;
  if (gi) upto = std::min(*gi, r - 1);
  if (upto < 0) return std::nullopt;
  try {
    const auto cl = cluster_permutohedron(h);
    const auto sk = skeleton(cl.poset, r);
    const auto oc = order_complex(sk.poset, upto + 1, opts.max_simplices);
    SkeletonObstruction ob;
    ob.skeleton_rank = r;
    ob.checked_up_to = upto;
    ob.betti_gf2 = reduced_betti(oc, Coefficients::GF2, opts.homology);
    ob.betti_gf2.resize(static_cast<std::size_t>(upto + 1));
    ob.betti_q = reduced_betti(oc, Coefficients::Q, opts.homology);
    ob.betti_q.resize(static_cast<std::size_t>(upto + 1));
    for (int i = 0; i <= upto; ++i) {
      if (ob.betti_gf2[static_cast<std::size_t>(i)] != 0 || ob.betti_q[static_cast<std::size_t>(i)] != 0) {
        ob.dimension = i;
        log.push_back("skeleton homology: H~_" + std::to_string(i) + " of rank-" + std::to_string(r) +
                      " skeleton is nonzero");
        return ob;
      }
    }
    log.push_back("skeleton homology: acyclic through dimension " + std::to_string(upto));
  } catch (const ComputationError& e) {
    log.push_back(std::string("skeleton homology: skipped, ") + e.what());
  }
  return std::nullopt;
}

std::uint64_t total_strategy_columns(const Graph& h) {
  const int r = (static_cast<int>(h.edge_count()) + 1) / 2;
  std::uint64_t c = factorial(h.n());
  // C(n+r-1, r)
  std::uint64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * static_cast<std::uint64_t>(h.n() + r - i) / static_cast<std::uint64_t>(i);
  return c * b;
}

}  // namespace

FormalityReport formality_report(const Graph& g, const FormalityOptions& opts) {
  FormalityReport rep;
  const Recognition rec = recognize_indifference(g);
  if (const auto* cert = std::get_if<IndifferenceCertificate>(&rec)) {
    rep.verdict = Verdict::Formal;
    rep.certificate = *cert;
    rep.log.push_back("recognition: Hessenberg certificate h = " + format_hessenberg(cert->h));
    if (opts.artifacts && g.n() <= 8) {
      rep.B = betti_polynomial_hessenberg(cert->h);
      rep.inter = inter_polynomial(g);
      rep.A = compute_A(g);
    }
    return rep;
  }
  rep.witness = std::get<ForbiddenWitness>(rec);
  rep.log.push_back("recognition: forbidden induced " + kind_name(*rep.witness));
  const Graph h = induced_subgraph(g, rep.witness->vertices);
  const long fixed_points = static_cast<long>(factorial(h.n()));

  if (auto ob = skeleton_strategy(h, opts, rep.log)) {
    rep.verdict = Verdict::NonFormal;
    rep.evidence = EvidenceKind::ForbiddenSkeletonHomology;
    rep.skeleton = std::move(ob);
    return rep;
  }

  auto run_total = [&]() -> bool {
    GkmTotal tot = gkm_total_betti(h, Field::GF2, opts.gkm);
    if (!tot.determined) {
      rep.log.push_back("gkm total: undetermined, " + tot.reason);
      return false;
    }
    const bool mismatch = tot.total != fixed_points;
    rep.log.push_back("gkm total: " + std::to_string(tot.total) + (mismatch ? " != " : " == ") +
                      std::to_string(fixed_points));
    rep.gkm = std::move(tot);
    if (!mismatch) return false;
    rep.verdict = Verdict::NonFormal;
    rep.evidence = EvidenceKind::TotalBettiMismatch;
    return true;
  };

  const bool quick = total_strategy_columns(h) <= opts.quick_gkm_columns;
  if (quick && run_total()) return rep;
  if (!quick) rep.log.push_back("gkm total: deferred, largest matrix has " + std::to_string(total_strategy_columns(h)) + " columns");

  try {
    long beta2 = 0, beta4 = 0;
    if (rep.gkm && rep.gkm->report.ordinary.values.size() >= 3) {
      beta2 = rep.gkm->report.ordinary.values[1].get_si();
      beta4 = rep.gkm->report.ordinary.values[2].get_si();
    } else {
      const auto r2 = gkm_betti_report(h, Field::GF2, 2, opts.gkm);
      beta2 = r2.ordinary.values[1].get_si();
      beta4 = r2.ordinary.values[2].get_si();
    }
    rep.inter = inter_polynomial(h);
    auto test = abfp_consistency_test(h, beta2, beta4);
    rep.log.push_back("abfp: " + test.detail);
    const bool inconsistent = !test.consistent;
    rep.abfp = std::move(test);
    if (inconsistent) {
      rep.verdict = Verdict::NonFormal;
      rep.evidence = EvidenceKind::AbfpInconsistency;
      return rep;
    }
  } catch (const ComputationError& e) {
    rep.log.push_back(std::string("abfp: skipped, ") + e.what());
  } catch (const NonIndifferenceFace& e) {
    rep.log.push_back(std::string("abfp: skipped, ") + e.what());
  }

  if (!quick && run_total()) return rep;
  rep.verdict = Verdict::Undetermined;
  return rep;
}

bool verify_report(const Graph& g, const FormalityReport& r) {
  if (r.verdict == Verdict::Formal) return r.certificate && verify_certificate(g, *r.certificate);
  if (r.verdict != Verdict::NonFormal || !r.witness || !r.evidence) return false;
  const Graph h = induced_subgraph(g, r.witness->vertices);
  if (!graphs_isomorphic(h, witness_graph(*r.witness))) return false;
  switch (*r.evidence) {
    case EvidenceKind::ForbiddenSkeletonHomology: {
      if (!r.skeleton) return false;
      const auto& s = *r.skeleton;
      const auto cl = cluster_permutohedron(h);
      const auto oc = order_complex(skeleton(cl.poset, s.skeleton_rank).poset, s.checked_up_to + 1);
      auto b = reduced_betti(oc, Coefficients::GF2);
      b.resize(static_cast<std::size_t>(s.checked_up_to + 1));
      return b == s.betti_gf2 && b[static_cast<std::size_t>(s.dimension)] != 0;
    }
    case EvidenceKind::TotalBettiMismatch:
      return r.gkm && r.gkm->determined && r.gkm->total != static_cast<long>(factorial(h.n()));
    case EvidenceKind::AbfpInconsistency: {
      if (!r.abfp) return false;
      const auto again = abfp_consistency_test(h, r.abfp->beta2, r.abfp->beta4);
      return !again.consistent && again.forced_b2 == r.abfp->forced_b2;
    }
  }
  return false;
}

std::string report_to_json(const Graph& g, const FormalityReport& r) {
  nlohmann::json j;
  j["graph"] = nlohmann::json::parse(to_json(g));
  j["verdict"] = r.verdict == Verdict::Formal ? "Formal" : r.verdict == Verdict::NonFormal ? "NonFormal" : "Undetermined";
  if (r.certificate) {
    j["certificate"] = {{"ordering", r.certificate->ordering}, {"h", r.certificate->h}};
  }
  if (r.evidence) {
    nlohmann::json ev;
    ev["kind"] = evidence_name(*r.evidence);
    ev["witness_vertices"] = r.witness->vertices;
    ev["witness_kind"] = kind_name(*r.witness);
    nlohmann::json num;
    if (*r.evidence == EvidenceKind::ForbiddenSkeletonHomology) {
      num = {{"skeleton_rank", r.skeleton->skeleton_rank},
             {"dimension", r.skeleton->dimension},
             {"betti_f2", r.skeleton->betti_gf2},
             {"betti_q", r.skeleton->betti_q}};
    } else if (*r.evidence == EvidenceKind::TotalBettiMismatch) {
      num = {{"total", r.gkm->total}, {"fixed_points", static_cast<long>(factorial(static_cast<int>(r.witness->vertices.size())))}};
    } else {
      num = {{"gkm_beta2", r.abfp->beta2}, {"gkm_beta4", r.abfp->beta4}};
      if (r.abfp->forced_b2) num["forced_b2"] = r.abfp->forced_b2->get_str();
      num["detail"] = r.abfp->detail;
    }
    ev["numbers"] = num;
    j["evidence"] = ev;
  } else if (r.witness) {
    j["witness"] = {{"kind", kind_name(*r.witness)}, {"vertices", r.witness->vertices}};
  }
  nlohmann::json art = nlohmann::json::object();
  if (r.B) art["B"] = r.B->to_longs();
  if (r.A) art["A"] = r.A->to_longs();
  if (r.inter) art["Inter"] = r.inter->to_longs();
  if (r.gkm) art["gkm_report"] = nlohmann::json::parse(gkm_report_json(r.gkm->report));
  j["artifacts"] = art;
  j["log"] = r.log;
  return j.dump();
}

}  // namespace diagtype
