#include "action.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace sb {

MixedWord mixed_inverse(const MixedWord& w) {
  MixedWord r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->is_t, it->idx, -it->sign});
  return r;
}

std::string to_string(const MixedWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t t = 0; t < w.size(); ++t) {
    if (t) out += ' ';
    out += w[t].is_t ? "T(1," : "a(1,";
    out += std::to_string(w[t].idx);
    out += ")";
    if (w[t].sign < 0) out += "^-1";
  }
  return out;
}

MixedWord parse_mixed_word(const std::string& text, int genus) {
  MixedWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    int sign = 1;
    std::string body = tok;
    if (body.size() > 3 && body.substr(body.size() - 3) == "^-1") {
      sign = -1;
      body = body.substr(0, body.size() - 3);
    }
    bool is_t;
    if (body.rfind("T(1,", 0) == 0)
      is_t = true;
    else if (body.rfind("a(1,", 0) == 0)
      is_t = false;
    else
      throw Error(ErrCode::Parse, "parse_mixed_word", "malformed token", tok);
    if (body.back() != ')')
      throw Error(ErrCode::Parse, "parse_mixed_word", "malformed token", tok);
    int idx = 0;
    try {
      idx = std::stoi(body.substr(4, body.size() - 5));
    } catch (const std::exception&) {
      throw Error(ErrCode::Parse, "parse_mixed_word", "malformed token", tok);
    }
    if (is_t && idx < 2)
      throw Error(ErrCode::Parse, "parse_mixed_word", "strand must be >= 2", tok);
    if (!is_t && (idx < 1 || idx > 2 * genus))
      throw Error(ErrCode::Parse, "parse_mixed_word", "handle index out of 1..2g", tok);
    w.push_back({is_t, idx, sign});
  }
  return w;
}

std::string to_string(const ActionGenerator& z) {
  std::string out;
  if (z.kind == ActionGenerator::Kind::T)
    out = "T(" + std::to_string(z.r) + "," + std::to_string(z.s) + ")";
  else
    out = "A(" + std::to_string(z.i) + "," + std::to_string(z.k) + ")";
  if (z.sign < 0) out += "^-1";
  return out;
}

PeripheralTable PeripheralTable::defaults(int genus) {
  PeripheralTable t;
  t.genus_ = genus;
  return t;
}

PeripheralTable PeripheralTable::load_file(const std::string& path, int genus) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrCode::Usage, "load_action_table", "cannot open file", path);
  PeripheralTable t;
  t.genus_ = genus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed;
    for (char c : line)
      if (c != '\r') trimmed += c;
    size_t first = trimmed.find_first_not_of(" \t");
    if (first == std::string::npos || trimmed[first] == '#') continue;
    size_t arrow = trimmed.find("->");
    if (arrow == std::string::npos)
      throw Error(ErrCode::Parse, "load_action_table", "missing -> on line " + std::to_string(lineno));
    std::string lhs = trimmed.substr(0, arrow);
    std::string rhs = trimmed.substr(arrow + 2);
    std::istringstream lin(lhs);
    std::string ztok, atok;
    if (!(lin >> ztok >> atok))
      throw Error(ErrCode::Parse, "load_action_table", "malformed line " + std::to_string(lineno));
    int sign = 1;
    if (ztok.size() > 3 && ztok.substr(ztok.size() - 3) == "^-1") {
      sign = -1;
      ztok = ztok.substr(0, ztok.size() - 3);
    }
    int i = 0, k = 0, kprime = 0;
    if (std::sscanf(ztok.c_str(), "A(%d,%d)", &i, &k) != 2)
      throw Error(ErrCode::Parse, "load_action_table", "malformed actor", ztok);
    if (std::sscanf(atok.c_str(), "a(1,%d)", &kprime) != 1)
      throw Error(ErrCode::Parse, "load_action_table", "malformed target", atok);
    if (i < 2)
      throw Error(ErrCode::Parse, "load_action_table", "actor needs i >= 2", ztok);
    if (k < 1 || k > 2 * genus || kprime < 1 || kprime > 2 * genus)
      throw Error(ErrCode::Parse, "load_action_table", "handle index out of 1..2g", ztok);
    MixedWord word = parse_mixed_word(rhs, genus);
    // Consistency: the first-strand image of the entry must still be x_k'.
    SurfaceWord img;
    img.genus = genus;
    for (const MixedLetter& l : word)
      if (!l.is_t) img.letters.push_back({l.idx, l.sign});
    SurfaceWord want;
    want.genus = genus;
    want.letters.push_back({kprime, 1});
    if (!(canonical_form(img) == canonical_form(want)))
      throw Error(ErrCode::Parse, "load_action_table",
                  "entry does not project to x" + std::to_string(kprime) + " on line " +
                      std::to_string(lineno));
    t.a_entries_[{i, k, sign, kprime}] = std::move(word);
  }
  return t;
}

const MixedWord* PeripheralTable::find_a(int i, int k, int sign, int kprime) const {
  auto it = a_entries_.find({i, k, sign, kprime});
  return it == a_entries_.end() ? nullptr : &it->second;
}

namespace {

MixedLetter T1(int m, int sign = 1) { return {true, m, sign}; }
MixedLetter a1(int k, int sign = 1) { return {false, k, sign}; }

void append(MixedWord& out, const MixedWord& w) { out.insert(out.end(), w.begin(), w.end()); }

void append_conj(MixedWord& out, const MixedWord& conj, const MixedWord& core) {
  append(out, conj);
  append(out, core);
  append(out, mixed_inverse(conj));
}

// T(r,s) T(1,j) T(r,s)^-1 as printed.
MixedWord conj_t_core(int r, int s, int j) {
  if (j < r || j > s) return {T1(j)};
  if (j == r)
    return {T1(j, -1), T1(s, -1), T1(j), T1(s), T1(j)};
  if (j < s)
    return {T1(r, -1), T1(s, -1), T1(r), T1(s), T1(j), T1(s, -1), T1(r, -1), T1(s), T1(r)};
  return {T1(r, -1), T1(j), T1(r)};
}

// T(r,s)^-1 T(1,j) T(r,s); solved from the printed rules.
MixedWord conj_t_inv_core(int r, int s, int j) {
  if (j < r || j > s) return {T1(j)};
  if (j == r)
    return {T1(s), T1(r), T1(s, -1)};
  if (j < s)
    return {T1(s), T1(r), T1(s, -1), T1(r, -1), T1(j), T1(r), T1(s), T1(r, -1), T1(s, -1)};
  return {T1(s), T1(r), T1(s), T1(r, -1), T1(s, -1)};
}

// a_{i,k} T(1,j) a_{i,k}^-1 as printed.
MixedWord conj_a_core(int i, int k, int j) {
  bool odd = (k % 2 == 1);
  MixedWord out;
  if (i > j) return {T1(j)};
  if (i == j) {
    if (odd) {
      for (int m = j - 1; m >= 2; --m) out.push_back(T1(m));
      out.push_back(a1(k, -1));
      out.push_back(T1(j));
      out.push_back(a1(k));
      for (int m = 2; m <= j - 1; ++m) out.push_back(T1(m, -1));
    } else {
      out.push_back(a1(k, -1));
      for (int m = 2; m <= j - 1; ++m) out.push_back(T1(m, -1));
      out.push_back(a1(k));
      out.push_back(a1(k, -1));
      out.push_back(T1(j));
      out.push_back(a1(k));
      out.push_back(a1(k, -1));
      for (int m = j - 1; m >= 2; --m) out.push_back(T1(m));
      out.push_back(a1(k));
    }
    return out;
  }
  // 2 <= i < j
  if (odd) return {T1(i, -1), T1(j), T1(i)};
  out.push_back(a1(k, -1));
  for (int m = 2; m <= i - 1; ++m) out.push_back(T1(m, -1));
  out.push_back(T1(i));
  for (int m = i - 1; m >= 2; --m) out.push_back(T1(m));
  out.push_back(a1(k));
  out.push_back(T1(j));
  out.push_back(a1(k, -1));
  for (int m = 2; m <= i - 1; ++m) out.push_back(T1(m, -1));
  out.push_back(T1(i, -1));
  for (int m = i - 1; m >= 2; --m) out.push_back(T1(m));
  out.push_back(a1(k));
  return out;
}

// a_{i,k}^-1 T(1,j) a_{i,k}. Only the j < i case is forced by the printed
// rules alone; the rest telescopes through the table entry
// q = a_{i,k}^-1 a(1,k) a_{i,k} and raises action-undefined without it.
MixedWord conj_a_inv_core(int i, int k, int j, const PeripheralTable& table,
                          const ActionGenerator& z) {
  if (i > j) return {T1(j)};
  const MixedWord* q = table.find_a(i, k, -1, k);
  if (!q)
    throw Error(ErrCode::ActionUndefined, "act_generator",
                "no table entry for " + to_string(z) + " a(1," + std::to_string(k) + ")");
  bool odd = (k % 2 == 1);
  // t_i = inverse image of T(1,i).
  MixedWord ti;
  if (odd) {
    MixedWord wi;  // T(1,i-1) ... T(1,2)
    for (int m = i - 1; m >= 2; --m) wi.push_back(T1(m));
    MixedWord inner;
    append_conj(inner, mixed_inverse(wi), {T1(i)});
    append_conj(ti, *q, inner);
  } else {
    MixedWord u;  // T(1,2)^-1 ... T(1,i-1)^-1
    for (int m = 2; m <= i - 1; ++m) u.push_back(T1(m, -1));
    MixedWord inner;
    append_conj(inner, *q, {T1(i)});
    append_conj(ti, mixed_inverse(u), inner);
  }
  if (j == i) return ti;
  // j > i
  if (odd) {
    MixedWord out;
    append_conj(out, ti, {T1(j)});
    return out;
  }
  MixedWord u;
  for (int m = 2; m <= i - 1; ++m) u.push_back(T1(m, -1));
  MixedWord w_inv_img;  // inverse image of W' = U T(1,i) U^-1
  append_conj(w_inv_img, u, ti);
  MixedWord v_inv_img;  // inverse image of V = a^-1 W' a
  append_conj(v_inv_img, mixed_inverse(*q), w_inv_img);
  MixedWord out;
  append_conj(out, mixed_inverse(v_inv_img), {T1(j)});
  return out;
}

MixedWord core_word(const ActionGenerator& z, int strand, const PeripheralTable& table) {
  if (z.kind == ActionGenerator::Kind::T)
    return z.sign > 0 ? conj_t_core(z.r, z.s, strand) : conj_t_inv_core(z.r, z.s, strand);
  return z.sign > 0 ? conj_a_core(z.i, z.k, strand)
                    : conj_a_inv_core(z.i, z.k, strand, table, z);
}

void validate_generator(const ActionGenerator& z, int level) {
  if (z.kind == ActionGenerator::Kind::T) {
    if (!(2 <= z.r && z.r < z.s && z.s <= level))
      throw Error(ErrCode::Domain, "act_generator", "need 2 <= r < s <= level", to_string(z));
  } else {
    if (!(2 <= z.i && z.i <= level))
      throw Error(ErrCode::Domain, "act_generator", "need 2 <= i <= level", to_string(z));
  }
  if (z.sign != 1 && z.sign != -1)
    throw Error(ErrCode::Domain, "act_generator", "sign must be ±1", to_string(z));
}

}  // namespace

FreeWord mixed_to_basis(const MixedWord& w, int level, int genus) {
  FreeWord out;
  out.level = level;
  SurfaceWord prefix;
  prefix.genus = genus;
  for (const MixedLetter& l : w) {
    if (!l.is_t) {
      if (l.idx < 1 || l.idx > 2 * genus)
        throw Error(ErrCode::Domain, "mixed_to_basis", "handle index out of 1..2g");
      SurfaceWord step;
      step.genus = genus;
      step.letters.push_back({l.idx, l.sign});
      prefix = sg_product(prefix, step);
      continue;
    }
    if (l.idx < 2 || l.idx > level)
      throw Error(ErrCode::Domain, "mixed_to_basis", "strand out of 2..level",
                  std::to_string(l.idx));
    SurfaceWord canon = canonical_form(prefix);
    if (!(canon == prefix))
      throw Error(ErrCode::Unrepresentable, "mixed_to_basis",
                  "running conjugator is not a normal form", to_string(prefix));
    out.letters.push_back({make_basis_symbol(canon, l.idx, level), l.sign});
  }
  if (!prefix.letters.empty())
    throw Error(ErrCode::Unrepresentable, "mixed_to_basis",
                "conjugator does not close up", to_string(prefix));
  return free_reduce(out);
}

FreeWord act_generator(const ActionGenerator& z, const BasisSymbol& b,
                       const PeripheralTable& table) {
  validate_generator(z, b.level);
  const int genus = b.gamma.genus;

  MixedWord total;
  if (!b.gamma.letters.empty()) {
    MixedWord zeta;
    if (z.kind == ActionGenerator::Kind::T) {
      // T(r,s) commutes with every a(1,k): built-in part of the table.
      for (const SurfaceLetter& l : b.gamma.letters) zeta.push_back(a1(l.index, l.sign));
    } else {
      for (const SurfaceLetter& l : b.gamma.letters) {
        const MixedWord* entry = table.find_a(z.i, z.k, z.sign, l.index);
        if (!entry)
          throw Error(ErrCode::ActionUndefined, "act_generator",
                      "no table entry for " + to_string(z) + " a(1," +
                          std::to_string(l.index) + ")");
        if (l.sign > 0)
          append(zeta, *entry);
        else
          append(zeta, mixed_inverse(*entry));
      }
    }
    append_conj(total, zeta, core_word(z, b.strand, table));
  } else {
    total = core_word(z, b.strand, table);
  }
  return mixed_to_basis(total, b.level, genus);
}

FreeWord act_word(const ActionGenerator& z, const FreeWord& w, const PeripheralTable& table) {
  FreeWord out;
  out.level = w.level;
  for (const FreeLetter& l : w.letters) {
    FreeWord img = act_generator(z, l.sym, table);
    if (l.sign < 0) img = fw_inverse(img);
    out.letters.insert(out.letters.end(), img.letters.begin(), img.letters.end());
  }
  return free_reduce(out);
}

}  // namespace sb
