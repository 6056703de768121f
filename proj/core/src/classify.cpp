#include "qhb/classify.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qhb/errors.hpp"

namespace qhb {

std::string_view verdict_name(Verdict v) { return v == Verdict::Yes ? "Yes" : "No"; }

std::string_view evidence_name(Evidence e) {
  switch (e) {
    case Evidence::S3Branch: return "s3_branch";
    case Evidence::LensInFamily: return "lens_in_family";
    case Evidence::LensNotInR: return "lens_not_in_R";
    case Evidence::CentralWeightOne: return "central_weight_one";
  }
  return "unknown";
}

std::string_view witness_status_name(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Attached: return "attached";
    case WitnessStatus::NotRequested: return "not_requested";
    case WitnessStatus::ResourceExceeded: return "resource_exceeded";
    case WitnessStatus::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

std::vector<LegPair> complementary_pairs(const SeifertInvariants& normalized) {
  std::vector<LegPair> out;
  const auto& legs = normalized.legs;
  for (std::size_t i = 0; i < legs.size(); ++i)
    for (std::size_t j = i + 1; j < legs.size(); ++j)
      if (is_complementary(Fraction(legs[i].alpha, legs[i].beta), Fraction(legs[j].alpha, legs[j].beta)))
        out.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
  return out;
}

std::optional<LegPair> detect_complementary_pair(const SeifertInvariants& normalized) {
  if (normalized.legs.size() != 3) {
    throw OutOfScope("complementary-leg detection needs three legs, got " + std::to_string(normalized.legs.size()));
  }
  auto pairs = complementary_pairs(normalized);
  if (pairs.empty()) return std::nullopt;
  return pairs.front();
}

Reduction reduce(const StarGraph& g) {
  if (g.legs.size() != 3) throw NotComplementary("reduction needs a three-legged graph");
  if (g.legs[1].empty() || g.legs[2].empty() || dual(g.legs[1]) != g.legs[2]) {
    throw NotComplementary("legs " + g.legs[1].to_string() + " and " + g.legs[2].to_string() +
                           " are not complementary");
  }
  Reduction red;
  red.leg1 = g.legs[0];
  red.a0 = g.a0;

  // seq = (a0, a_1, ..., a_{n1})
  std::vector<std::int64_t> seq{g.a0};
  seq.insert(seq.end(), g.legs[0].begin(), g.legs[0].end());
  const std::size_t n1 = g.legs[0].size();

  std::vector<std::int64_t> chain(seq.rbegin(), seq.rend());
  chain.back() -= 1;
  red.chain = WeightString(chain);

  if (g.a0 == 1) return red;  // r = 0; no lens space, see decide

  while (static_cast<std::size_t>(red.r) < seq.size() && seq[static_cast<std::size_t>(red.r)] == 2) ++red.r;
  if (static_cast<std::size_t>(red.r) == n1 + 1) {
    red.lens_string = WeightString{};
    red.lens = LensSpace::s3();
  } else {
    std::vector<std::int64_t> t(seq.rbegin(), seq.rend() - red.r);
    t.back() -= 1;
    red.lens_string = WeightString::canonical(std::move(t));
    const Fraction f = eval(*red.lens_string);
    red.lens = LensSpace(f.p(), f.q());
  }
  // The blown-down chain and the lens string describe the same lens space.
  if (eval(red.chain) != eval(*red.lens_string)) {
    throw std::logic_error("reduction chain " + red.chain.to_string() + " disagrees with lens string " +
                           red.lens_string->to_string());
  }
  return red;
}

namespace {

StarGraph permute_legs(const StarGraph& g, const std::array<int, 3>& order) {
  StarGraph out{g.a0, {}};
  for (int idx : order) out.legs.push_back(g.legs[static_cast<std::size_t>(idx - 1)]);
  return out;
}

std::array<int, 3> order_for(const LegPair& pair) {
  const int other = 6 - pair.first - pair.second;
  return {other, pair.first, pair.second};
}

Reduction reduce_with_pair(const StarGraph& g, const LegPair& pair) {
  const auto order = order_for(pair);
  Reduction red = reduce(permute_legs(g, order));
  red.complementary_pair = pair;
  red.leg_order = order;
  return red;
}

struct BranchOutcome {
  Verdict verdict;
  Evidence evidence;
  std::optional<FamilyInstance> family;
};

BranchOutcome judge(const Reduction& red, const FamilyData& data) {
  if (!red.lens) return {Verdict::No, Evidence::CentralWeightOne, std::nullopt};
  if (red.lens->is_s3()) return {Verdict::Yes, Evidence::S3Branch, std::nullopt};
  LensVerdict lv = bounds_qhb(*red.lens, data);
  if (lv.bounds) return {Verdict::Yes, Evidence::LensInFamily, std::move(lv.family)};
  return {Verdict::No, Evidence::LensNotInR, std::nullopt};
}

LatticeVector unit(std::size_t n, std::size_t i, std::int64_t c = 1) {
  LatticeVector v(n, 0);
  v[i] = c;
  return v;
}

// Witness for the chain (a_{n1}, ..., a_1, a0 - 1) in Z^(n1+1), grown from a
// witness of the lens string by appending a 2-chain ending in a 1:
//   last -> last + f1, then -f1 + f2, ..., -f_{r-1} + f_r, then -f_r.
LatticeWitness chain_witness(const Reduction& red, const LatticeWitness& lens_witness) {
  const std::size_t k = red.chain.size();
  const auto r = static_cast<std::size_t>(red.r);
  LatticeWitness w{k, {}};
  if (r == 0) {
    w.vectors = lens_witness.vectors;
    return w;
  }
  const std::size_t m = lens_witness.vectors.size();
  for (const auto& v : lens_witness.vectors) {
    LatticeVector wide(k, 0);
    std::copy(v.begin(), v.end(), wide.begin());
    w.vectors.push_back(std::move(wide));
  }
  // f_s lives in column m + s - 1. For the S^3 branch m = 0 and the first
  // vector is f_1 + f_2 rather than (last + f_1).
  if (m == 0) {
    if (r == 1) {
      w.vectors.push_back(unit(k, 0, -1));
      return w;
    }
    LatticeVector first = unit(k, 0);
    first[1] = 1;
    w.vectors.push_back(std::move(first));
    for (std::size_t s = 1; s + 1 < r; ++s) {
      LatticeVector v = unit(k, s, -1);
      v[s + 1] = 1;
      w.vectors.push_back(std::move(v));
    }
    w.vectors.push_back(unit(k, r - 1, -1));
    return w;
  }
  w.vectors.back()[m] += 1;
  for (std::size_t s = 1; s < r; ++s) {
    LatticeVector v = unit(k, m + s - 1, -1);
    v[m + s] = 1;
    w.vectors.push_back(std::move(v));
  }
  w.vectors.push_back(unit(k, m + r - 1, -1));
  return w;
}

// Reorders a witness for the permuted star back to input leg order.
LatticeWitness unpermute(const LatticeWitness& w, const StarGraph& permuted, const std::array<int, 3>& order) {
  std::array<std::vector<LatticeVector>, 3> blocks;
  std::size_t index = 1;
  for (std::size_t pos = 0; pos < 3; ++pos) {
    for (std::size_t i = 0; i < permuted.legs[pos].size(); ++i) blocks[pos].push_back(w.vectors[index++]);
  }
  LatticeWitness out{w.ambient_rank, {w.vectors[0]}};
  for (int leg = 1; leg <= 3; ++leg) {
    const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), leg) - order.begin());
    out.vectors.insert(out.vectors.end(), blocks[pos].begin(), blocks[pos].end());
  }
  return out;
}

void attach_star_witness(Certificate& cert, const DecideOptions& options) {
  const Reduction& red = *cert.reduction;
  const StarGraph permuted = permute_legs(*cert.graph, red.leg_order);
  std::optional<LatticeWitness> lens_witness;
  if (red.is_s3()) {
    lens_witness = LatticeWitness{};
  } else {
    try {
      lens_witness = find_embedding(gram(*red.lens_string), options.limits);
    } catch (const ResourceExceeded&) {
      cert.witness_status = WitnessStatus::ResourceExceeded;
      return;
    }
    if (!lens_witness) {
      throw std::logic_error(red.lens->to_string() + " is listed as bounding but " + red.lens_string->to_string() +
                             " has no lattice embedding");
    }
  }
  const LatticeWitness chain = chain_witness(red, *lens_witness);
  StarEmbedding star = extend_with_complementary_legs(red.chain, chain, permuted.legs[1], permuted.legs[2]);
  if (star.graph != permuted) {
    throw std::logic_error("extended graph " + star.graph.to_string() + " differs from " + permuted.to_string());
  }
  LatticeWitness w = unpermute(star.witness, permuted, red.leg_order);
  if (!verify_embedding(w, gram(*cert.graph))) {
    throw std::logic_error("constructed witness does not verify for " + cert.graph->to_string());
  }
  cert.witness = std::move(w);
  cert.witness_status = WitnessStatus::Attached;
}

Certificate decide_lens_route(Certificate cert, const FamilyData& data, const DecideOptions& options) {
  cert.route = Route::LensSpace;
  const WeightString chain = to_linear_chain(cert.normalized);
  auto [p, q] = continuant(chain);
  if (p == 0) throw NotRationalHomologySphere("Y(" + cert.normalized.to_string() + ") has infinite H_1");
  if (p < 0) {
    p = -p;
    q = -q;
  }
  q = ((q % p) + p) % p;
  cert.lens = LensSpace(p, p == 1 ? Integer(0) : q);
  LensVerdict lv = bounds_qhb(*cert.lens, data);
  cert.verdict = lv.bounds ? Verdict::Yes : Verdict::No;
  cert.evidence = lv.bounds ? (cert.lens->is_s3() ? Evidence::S3Branch : Evidence::LensInFamily) : Evidence::LensNotInR;
  cert.family = std::move(lv.family);
  if (cert.verdict == Verdict::Yes) {
    if (!options.attach_witness) {
      cert.witness_status = WitnessStatus::NotRequested;
    } else {
      try {
        auto w = find_embedding(gram(cert.lens->string()), options.limits);
        if (!w) {
          throw std::logic_error(cert.lens->to_string() + " is listed as bounding but has no lattice embedding");
        }
        cert.witness = std::move(w);
        cert.witness_status = WitnessStatus::Attached;
      } catch (const ResourceExceeded&) {
        cert.witness_status = WitnessStatus::ResourceExceeded;
      }
    }
  }
  return cert;
}

}  // namespace

Reduction reduce(const SeifertInvariants& inv) {
  const SeifertInvariants n = normalize(inv);
  if (n.legs.size() != 3) throw OutOfScope("reduction needs exactly three exceptional fibres");
  const auto pair = detect_complementary_pair(n);
  if (!pair) throw OutOfScope("Y(" + n.to_string() + ") has no complementary legs");
  const OrientedStar star = to_star_graph(n);
  return reduce_with_pair(star.graph, *pair);
}

Certificate decide(const SeifertInvariants& inv, const FamilyData& data, const DecideOptions& options) {
  Certificate cert;
  cert.input = inv;
  cert.normalized = normalize(inv);
  cert.families_version = data.version();
  const std::size_t legs = cert.normalized.legs.size();
  if (legs > 3) throw OutOfScope("Seifert spaces with " + std::to_string(legs) + " exceptional fibres are out of scope");
  if (legs < 3) return decide_lens_route(std::move(cert), data, options);

  cert.complementary_pairs = complementary_pairs(cert.normalized);
  if (cert.complementary_pairs.empty()) {
    throw OutOfScope("Y(" + cert.normalized.to_string() + ") has no complementary legs");
  }
  const OrientedStar star = to_star_graph(cert.normalized);
  cert.graph = star.graph;
  cert.orientation_flipped = star.orientation_flipped;

  std::optional<BranchOutcome> outcome;
  for (const auto& pair : cert.complementary_pairs) {
    Reduction red = reduce_with_pair(star.graph, pair);
    BranchOutcome o = judge(red, data);
    if (!outcome) {
      outcome = std::move(o);
      cert.reduction = std::move(red);
    } else if (o.verdict != outcome->verdict) {
      throw std::logic_error("complementary pairs disagree on Y(" + cert.normalized.to_string() + ")");
    }
  }
  cert.verdict = outcome->verdict;
  cert.evidence = outcome->evidence;
  cert.family = std::move(outcome->family);
  cert.lens = cert.reduction->lens;

  if (cert.verdict == Verdict::Yes) {
    if (options.attach_witness) attach_star_witness(cert, options);
    else cert.witness_status = WitnessStatus::NotRequested;
  }
  cert.montesinos = report_montesinos(cert);
  return cert;
}

MontesinosReport report_montesinos(const Certificate& cert) {
  if (!cert.graph) throw OutOfScope("Montesinos reports need a three-legged certificate");
  MontesinosReport rep;
  const SeifertInvariants oriented = to_seifert(*cert.graph);
  rep.notation = "M(" + oriented.b.str() + ";";
  for (std::size_t i = 0; i < oriented.legs.size(); ++i) {
    rep.notation += (i ? "," : " ") + oriented.legs[i].alpha.str() + "/" + oriented.legs[i].beta.str();
  }
  rep.notation += ")";
  rep.determinant = h1_order(*cert.graph);
  rep.is_knot = (rep.determinant % 2) == 1;
  if (cert.reduction && cert.reduction->lens) {
    const LensSpace& lens = *cert.reduction->lens;
    rep.reduced_two_bridge = lens.is_s3() ? "unknot" : "K(" + lens.p().str() + "," + lens.q().str() + ")";
    rep.reduced_link = rep.reduced_two_bridge + " ⊔ U";
  }
  rep.ribbon_claim = cert.verdict == Verdict::Yes;
  return rep;
}

StarGraph generate_list_L(const WeightString& t, int r, const Integer& alpha, const Integer& beta,
                          const FamilyData& data) {
  if (t.empty() || !t.is_canonical()) throw DomainError("list member needs a non-empty canonical lens string");
  if (r < 0) throw DomainError("number of 2's must be non-negative");
  const Fraction f = eval(t);
  if (!bounds_qhb(LensSpace(f.p(), f.q()), data).bounds) {
    throw NotInR("L(" + f.p().str() + "," + f.q().str() + ") does not bound a rational homology ball");
  }
  const WeightString s2 = expand(Fraction(alpha, beta));
  const WeightString s3 = dual(s2);

  // L1 + v0, read outside in: t_1, ..., t_{m-1}, t_m + 1, 2, ..., 2.
  std::vector<std::int64_t> line(t.begin(), t.end());
  line.back() += 1;
  line.insert(line.end(), static_cast<std::size_t>(r), 2);
  StarGraph g;
  g.a0 = line.back();
  g.legs.push_back(WeightString(std::vector<std::int64_t>(line.rbegin() + 1, line.rend())));
  g.legs.push_back(s2);
  g.legs.push_back(s3);
  return g;
}

std::vector<ListMember> generate_list(const FamilyData& data, const GenerateOptions& options) {
  std::vector<ListMember> out;
  std::set<StarGraph> seen;
  for (const FamilyInstance& inst : data.instances(options.max_param)) {
    const LensSpace lens(inst.p, inst.q);
    for (const Integer& q : symmetry_orbit(lens)) {
      const WeightString t = expand(Fraction(inst.p, q));
      for (int r = 0; r <= options.max_r; ++r) {
        // A one-entry t with no 2's leaves the first leg empty, so the result
        // is a two-fibre lens space rather than a three-legged member.
        if (r == 0 && t.size() == 1) continue;
        for (Integer alpha = 2; alpha <= options.max_alpha; ++alpha) {
          for (Integer beta = 1; beta < alpha; ++beta) {
            if (boost::multiprecision::gcd(alpha, beta) != 1) continue;
            const std::size_t vertices =
                t.size() + static_cast<std::size_t>(r) + expand(Fraction(alpha, beta)).size() +
                expand(Fraction(alpha, alpha - beta)).size();
            if (vertices > options.max_vertices) continue;
            StarGraph g = generate_list_L(t, r, alpha, beta, data);
            if (!seen.insert(g).second) continue;
            out.push_back({std::move(g), t, r, alpha, beta, inst});
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ListMember& a, const ListMember& b) { return a.graph < b.graph; });
  return out;
}

}  // namespace qhb
