#include "hyper/lie.hpp"

namespace hyper {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_key(const LieKey& k) {
  std::size_t h = static_cast<std::size_t>(k.b);
  for (int j = 0; j < k.m.n; ++j) h = mix(h, static_cast<std::size_t>(k.m.e[j] + 1000));
  return h;
}

}  // namespace

std::size_t OrdMonoHash::operator()(const OrdMono& m) const noexcept {
  std::size_t h = m.size();
  for (const auto& f : m) h = mix(mix(h, hash_key(f.key)), static_cast<std::size_t>(f.exp));
  return h;
}

std::size_t LieEngine::CacheKeyHash::operator()(
    const std::pair<LieKey, OrdMono>& k) const noexcept {
  return mix(hash_key(k.first), OrdMonoHash{}(k.second));
}

int ord_degree(const OrdMono& m) {
  int d = 0;
  for (const auto& f : m) d += f.exp;
  return d;
}

void ord_add(OrdElem& e, const OrdMono& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = e.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

void ord_add(OrdElem& e, const OrdElem& f, const mpq_class& scale) {
  for (const auto& [m, c] : f) ord_add(e, m, c * scale);
}

LieEngine::LieEngine(RootDataPtr rd, int nvars, Context ctx)
    : rd_(std::move(rd)), nvars_(nvars), ctx_(ctx) {
  if (nvars < 0 || nvars > kMaxVars)
    fail(ErrorCode::InvalidArgument, "variable count must be in [0, 4]");
}

void LieEngine::check_key(const LieKey& k) const {
  if (k.b < 0 || k.b >= rd_->dim()) fail(ErrorCode::InvalidArgument, "basis index out of range");
  if (k.m.n != nvars_) fail(ErrorCode::ContextMismatch, "monomial has wrong variable count");
  if (ctx_ == Context::Current && !k.m.nonnegative())
    fail(ErrorCode::ContextMismatch, "negative exponent in current-algebra context");
}

std::vector<std::pair<LieKey, int>> LieEngine::bracket(const LieKey& x, const LieKey& y) const {
  std::vector<std::pair<LieKey, int>> out;
  MultiExp m = x.m + y.m;
  for (auto [b, c] : rd_->bracket(x.b, y.b)) out.push_back({LieKey{b, m}, c});
  return out;
}

const OrdElem& LieEngine::left_mul(const LieKey& x, const OrdMono& m) {
  auto ck = std::make_pair(x, m);
  if (auto it = cache_.find(ck); it != cache_.end()) return it->second;

  OrdElem out;
  if (m.empty() || x < m.front().key) {
    OrdMono r;
    r.reserve(m.size() + 1);
    r.push_back({x, 1});
    r.insert(r.end(), m.begin(), m.end());
    out.emplace(std::move(r), 1);
  } else if (x == m.front().key) {
    OrdMono r(m);
    r.front().exp += 1;
    out.emplace(std::move(r), 1);
  } else {
    // x z^e Q = z (x z^{e-1} Q) + [x, z] z^{e-1} Q
    const LieKey z = m.front().key;
    OrdMono rest(m);
    if (--rest.front().exp == 0) rest.erase(rest.begin());
    const OrdElem inner = left_mul(x, rest);
    for (const auto& [t, c] : inner) ord_add(out, left_mul(z, t), c);
    for (const auto& [w, c] : bracket(x, z)) ord_add(out, left_mul(w, rest), mpq_class(c));
  }
  return cache_.emplace(std::move(ck), std::move(out)).first->second;
}

OrdElem LieEngine::left_mul(const LieKey& x, const OrdElem& e) {
  OrdElem out;
  for (const auto& [m, c] : e) ord_add(out, left_mul(x, m), c);
  return out;
}

OrdElem LieEngine::multiply(const OrdElem& a, const OrdElem& b) {
  OrdElem out;
  for (const auto& [ma, ca] : a) {
    OrdElem cur = b;
    for (auto it = ma.rbegin(); it != ma.rend(); ++it)
      for (int k = 0; k < it->exp; ++k) cur = left_mul(it->key, cur);
    ord_add(out, cur, ca);
  }
  return out;
}

OrdElem LieEngine::word(const std::vector<LieKey>& keys) {
  OrdElem cur{{OrdMono{}, 1}};
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
    check_key(*it);
    cur = left_mul(*it, cur);
  }
  return cur;
}

std::string LieEngine::key_name(const LieKey& k) const {
  const RootData& rd = *rd_;
  std::string mono = k.m.str();
  switch (rd.kind(k.b)) {
    case BasisKind::Lower: return "xm[" + rd.root_name(rd.sub_index(k.b)) + "](" + mono + ")";
    case BasisKind::Cartan: return "h[" + std::to_string(rd.sub_index(k.b) + 1) + "](" + mono + ")";
    case BasisKind::Raise: return "xp[" + rd.root_name(rd.sub_index(k.b)) + "](" + mono + ")";
  }
  return "?";
}

std::string LieEngine::str(const OrdElem& e) const {
  if (e.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : e) {
    mpq_class a = c;
    if (!first) s += a < 0 ? " - " : " + ";
    else if (a < 0) s += "-";
    first = false;
    a = abs(a);
    std::string body;
    for (const auto& f : m) {
      if (!body.empty()) body += ' ';
      body += key_name(f.key);
      if (f.exp != 1) body += "^" + std::to_string(f.exp);
    }
    if (body.empty())
      s += a.get_str();
    else if (a == 1)
      s += body;
    else
      s += a.get_str() + " " + body;
  }
  return s;
}

}  // namespace hyper
