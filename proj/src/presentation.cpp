#include "reedy/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace reedy {

std::optional<std::size_t> Quiver::vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Quiver::arrow(std::string_view name) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return i;
  return std::nullopt;
}

std::string path_name(const Quiver& q, const PathWord& p) {
  if (p.arrows.empty()) return "e(" + q.vertices[p.source] + ")";
  std::string s;
  for (std::size_t i = p.arrows.size(); i-- > 0;) {
    s += q.arrows[p.arrows[i]].name;
    if (i) s += "*";
  }
  return s;
}

namespace {

struct Token {
  enum Kind { Ident, Number, Symbol } kind;
  std::string text;
  std::size_t line, col;
};

std::vector<Token> tokenize(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_' || line[i] == '\'' || line[i] == '.'))
        ++i;
      out.push_back({Token::Ident, std::string(line.substr(start, i - start)), lineno, start + 1});
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      out.push_back({Token::Number, std::string(line.substr(start, i - start)), lineno, start + 1});
    } else if (ch == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Token::Symbol, "->", lineno, start + 1});
      i += 2;
    } else if (std::string_view("=:*+-/(),[]").find(ch) != std::string_view::npos) {
      out.push_back({Token::Symbol, std::string(1, ch), lineno, start + 1});
      ++i;
    } else {
      throw ParseError(lineno, start + 1, std::string("syntax error: unexpected character '") + ch + "'");
    }
  }
  return out;
}

struct RawTerm {
  mpz_class num = 1, den = 1;
  PathWord path;
  Token at;
};

class Cursor {
 public:
  Cursor(const std::vector<Token>& t, std::size_t line, std::size_t eol_col) : t_(t), line_(line), eol_(eol_col) {}
  bool done() const { return i_ >= t_.size(); }
  const Token& peek() const {
    if (done()) throw ParseError(line_, eol_, "syntax error: unexpected end of line");
    return t_[i_];
  }
  bool peek_is(const std::string& sym) const { return !done() && t_[i_].text == sym && t_[i_].kind == Token::Symbol; }
  Token next() {
    Token tk = peek();
    ++i_;
    return tk;
  }
  Token expect_symbol(const std::string& sym) {
    Token tk = peek();
    if (tk.kind != Token::Symbol || tk.text != sym)
      throw ParseError(tk.line, tk.col, "syntax error: expected '" + sym + "' but found '" + tk.text + "'");
    ++i_;
    return tk;
  }
  Token expect(Token::Kind k, const char* what) {
    Token tk = peek();
    if (tk.kind != k) throw ParseError(tk.line, tk.col, std::string("syntax error: expected ") + what + " but found '" + tk.text + "'");
    ++i_;
    return tk;
  }
  void expect_end() {
    if (!done()) throw ParseError(t_[i_].line, t_[i_].col, "syntax error: unexpected '" + t_[i_].text + "'");
  }

 private:
  const std::vector<Token>& t_;
  std::size_t i_ = 0, line_, eol_;
};

std::size_t resolve_vertex(const Quiver& q, const Token& tk) {
  auto v = q.vertex(tk.text);
  if (!v) throw ParseError(tk.line, tk.col, "unknown vertex '" + tk.text + "'");
  return *v;
}

std::size_t resolve_arrow(const Quiver& q, const Token& tk) {
  auto a = q.arrow(tk.text);
  if (!a) throw ParseError(tk.line, tk.col, "unknown arrow '" + tk.text + "'");
  return *a;
}

// path := factor ('*' factor)*, factor := arrow | e(vertex); written left to right as composition.
PathWord parse_path(Cursor& cur, const Quiver& q) {
  struct Factor {
    bool identity;
    std::size_t index;
    Token at;
  };
  std::vector<Factor> factors;
  while (true) {
    Token tk = cur.expect(Token::Ident, "arrow or e(vertex)");
    if (tk.text == "e" && cur.peek_is("(") && !q.arrow("e")) {
      cur.expect_symbol("(");
      Token v = cur.expect(Token::Ident, "vertex");
      cur.expect_symbol(")");
      factors.push_back({true, resolve_vertex(q, v), tk});
    } else {
      factors.push_back({false, resolve_arrow(q, tk), tk});
    }
    if (!cur.peek_is("*")) break;
    cur.next();
  }
  PathWord p;
  bool started = false;
  std::size_t cur_target = 0;
  for (std::size_t k = factors.size(); k-- > 0;) {
    const Factor& f = factors[k];
    std::size_t s = f.identity ? f.index : q.arrows[f.index].source;
    std::size_t t = f.identity ? f.index : q.arrows[f.index].target;
    if (started && s != cur_target)
      throw ParseError(f.at.line, f.at.col,
                       "composability violation: '" + f.at.text + "' starts at " + q.vertices[s] +
                           " but the preceding factor ends at " + q.vertices[cur_target]);
    if (!started) {
      p.source = s;
      started = true;
    }
    cur_target = t;
    if (!f.identity) p.arrows.push_back(f.index);
  }
  p.target = cur_target;
  return p;
}

std::vector<RawTerm> parse_relation(Cursor& cur, const Quiver& q) {
  std::vector<RawTerm> terms;
  bool first = true;
  while (!cur.done()) {
    int sign = 1;
    if (cur.peek_is("+") || cur.peek_is("-")) {
      sign = cur.next().text == "-" ? -1 : 1;
    } else if (!first) {
      const Token& tk = cur.peek();
      throw ParseError(tk.line, tk.col, "syntax error: expected '+' or '-' between terms");
    }
    first = false;
    RawTerm t;
    t.at = cur.peek();
    if (cur.peek().kind == Token::Number) {
      t.num = mpz_class(cur.next().text);
      if (cur.peek_is("/")) {
        cur.next();
        Token d = cur.expect(Token::Number, "denominator");
        t.den = mpz_class(d.text);
        if (t.den == 0) throw ParseError(d.line, d.col, "zero denominator");
      }
      if (cur.peek_is("*")) cur.next();
    }
    t.num *= sign;
    t.path = parse_path(cur, q);
    terms.push_back(std::move(t));
  }
  return terms;
}

std::vector<std::size_t> parse_arrow_list(Cursor& cur, const Quiver& q) {
  std::vector<std::size_t> out;
  while (!cur.done()) {
    if (cur.peek_is(",")) {
      cur.next();
      continue;
    }
    out.push_back(resolve_arrow(q, cur.expect(Token::Ident, "arrow name")));
  }
  return out;
}

}  // namespace

PresentationFile parse_presentation(std::string_view text) {
  PresentationFile pf;
  std::string section;
  std::optional<std::string> kind;
  std::optional<Token> prime_token;
  std::optional<std::uint64_t> prime;
  bool have_maxlen = false, have_vertices = false;
  std::vector<std::pair<std::vector<RawTerm>, Token>> raw_relations;
  std::map<std::size_t, int> degrees;
  std::optional<ReedyData> reedy;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto toks = tokenize(line, lineno);
    if (toks.empty()) continue;
    std::size_t start = 0;
    if (toks[0].kind == Token::Symbol && toks[0].text == "[") {
      if (toks.size() < 3 || toks[1].kind != Token::Ident || toks[2].text != "]")
        throw ParseError(lineno, toks[0].col, "syntax error: malformed section header");
      section = toks[1].text;
      static const std::set<std::string> known{"field", "quiver", "relations", "limits", "reedy"};
      if (!known.count(section)) throw ParseError(lineno, toks[1].col, "unknown section '" + section + "'");
      if (section == "reedy" && !reedy) reedy = ReedyData{};
      start = 3;
    }
    std::vector<Token> body(toks.begin() + static_cast<std::ptrdiff_t>(start), toks.end());
    if (body.empty()) continue;
    if (section.empty()) throw ParseError(lineno, body[0].col, "content outside of any section");
    Cursor cur(body, lineno, line.size() + 1);

    if (section == "field") {
      while (!cur.done()) {
        Token key = cur.expect(Token::Ident, "field key");
        cur.expect_symbol("=");
        Token val = cur.next();
        if (key.text == "kind") {
          if (val.text != "GF" && val.text != "Q")
            throw ParseError(val.line, val.col, "unknown field kind '" + val.text + "' (expected GF or Q)");
          kind = val.text;
        } else if (key.text == "p") {
          if (val.kind != Token::Number) throw ParseError(val.line, val.col, "syntax error: p must be a number");
          if (val.text.size() > 12) throw ParseError(val.line, val.col, "prime out of range");
          prime = std::stoull(val.text);
          prime_token = val;
        } else {
          throw ParseError(key.line, key.col, "unknown field key '" + key.text + "'");
        }
      }
    } else if (section == "quiver") {
      Token head = cur.expect(Token::Ident, "'vertices' or 'arrow'");
      if (head.text == "vertices") {
        cur.expect_symbol("=");
        while (!cur.done()) {
          if (cur.peek_is(",")) {
            cur.next();
            continue;
          }
          Token v = cur.expect(Token::Ident, "vertex name");
          if (pf.quiver.vertex(v.text)) throw ParseError(v.line, v.col, "duplicate vertex '" + v.text + "'");
          pf.quiver.vertices.push_back(v.text);
        }
        have_vertices = true;
      } else if (head.text == "arrow") {
        Token name = cur.expect(Token::Ident, "arrow name");
        if (pf.quiver.arrow(name.text)) throw ParseError(name.line, name.col, "duplicate arrow '" + name.text + "'");
        cur.expect_symbol(":");
        Token s = cur.expect(Token::Ident, "source vertex");
        cur.expect_symbol("->");
        Token t = cur.expect(Token::Ident, "target vertex");
        cur.expect_end();
        pf.quiver.arrows.push_back({name.text, resolve_vertex(pf.quiver, s), resolve_vertex(pf.quiver, t)});
      } else {
        throw ParseError(head.line, head.col, "syntax error: expected 'vertices' or 'arrow'");
      }
    } else if (section == "relations") {
      Token first = cur.peek();
      raw_relations.emplace_back(parse_relation(cur, pf.quiver), first);
    } else if (section == "limits") {
      Token key = cur.expect(Token::Ident, "'maxlen'");
      if (key.text != "maxlen") throw ParseError(key.line, key.col, "unknown limit '" + key.text + "'");
      cur.expect_symbol("=");
      Token v = cur.expect(Token::Number, "number");
      cur.expect_end();
      pf.maxlen = std::stoul(v.text);
      if (pf.maxlen < 1) throw ParseError(v.line, v.col, "maxlen must be at least 1");
      have_maxlen = true;
    } else if (section == "reedy") {
      Token head = cur.expect(Token::Ident, "'degree', 'plus' or 'minus'");
      if (head.text == "degree") {
        std::size_t v = resolve_vertex(pf.quiver, cur.expect(Token::Ident, "vertex"));
        cur.expect_symbol("=");
        Token d = cur.expect(Token::Number, "degree");
        cur.expect_end();
        degrees[v] = std::stoi(d.text);
      } else if (head.text == "plus" || head.text == "minus") {
        cur.expect_symbol("=");
        auto list = parse_arrow_list(cur, pf.quiver);
        auto& dst = head.text == "plus" ? reedy->plus : reedy->minus;
        dst.insert(dst.end(), list.begin(), list.end());
      } else {
        throw ParseError(head.line, head.col, "syntax error: expected 'degree', 'plus' or 'minus'");
      }
    }
  }

  if (!kind) throw ParseError(lineno, 1, "missing [field] kind");
  if (*kind == "GF") {
    if (!prime) throw ParseError(lineno, 1, "GF field needs p");
    try {
      pf.field = Field::gf(*prime);
    } catch (const FieldError& e) {
      throw ParseError(prime_token->line, prime_token->col, std::string("non-prime p: ") + e.what());
    }
  } else {
    pf.field = Field::rationals();
  }
  if (!have_vertices || pf.quiver.vertices.empty()) throw ParseError(lineno, 1, "missing quiver vertices");
  if (!have_maxlen) throw ParseError(lineno, 1, "missing [limits] maxlen");

  for (auto& [terms, at] : raw_relations) {
    RelationExpr rel;
    for (auto& t : terms) {
      if (t.path.source != terms[0].path.source || t.path.target != terms[0].path.target)
        throw ParseError(t.at.line, t.at.col, "relation terms have different endpoints");
      try {
        rel.terms.emplace_back(Scalar::fraction(pf.field, t.num, t.den), t.path);
      } catch (const FieldError& e) {
        throw ParseError(t.at.line, t.at.col, std::string("coefficient: ") + e.what());
      }
    }
    if (rel.terms.empty()) throw ParseError(at.line, at.col, "empty relation");
    pf.relations.push_back(std::move(rel));
  }
  if (reedy) {
    reedy->degree.assign(pf.quiver.vertices.size(), 0);
    for (std::size_t v = 0; v < pf.quiver.vertices.size(); ++v) {
      auto it = degrees.find(v);
      if (it == degrees.end()) throw ParseError(lineno, 1, "missing degree for vertex " + pf.quiver.vertices[v]);
      reedy->degree[v] = it->second;
    }
    pf.reedy = reedy;
  }
  return pf;
}

PresentationFile load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

namespace {

std::vector<std::vector<std::size_t>> rooted_sequence(const Quiver& q, bool left) {
  const std::size_t n = q.vertices.size();
  std::vector<std::vector<std::size_t>> seq{{}};
  std::vector<bool> prev(n, false);
  while (true) {
    std::vector<bool> next(n, true);
    for (auto& a : q.arrows) {
      std::size_t into = left ? a.target : a.source;
      std::size_t from = left ? a.source : a.target;
      if (!prev[from]) next[into] = false;
    }
    if (next == prev) break;
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < n; ++v)
      if (next[v]) members.push_back(v);
    seq.push_back(members);
    prev = next;
    if (seq.size() > n + 2) break;
  }
  return seq;
}

}  // namespace

std::vector<std::vector<std::size_t>> left_rooted_sequence(const Quiver& q) { return rooted_sequence(q, true); }
std::vector<std::vector<std::size_t>> right_rooted_sequence(const Quiver& q) { return rooted_sequence(q, false); }
bool is_left_rooted(const Quiver& q) { return left_rooted_sequence(q).back().size() == q.vertices.size(); }
bool is_right_rooted(const Quiver& q) { return right_rooted_sequence(q).back().size() == q.vertices.size(); }

namespace {

// Path space W = paths of length <= maxlen, split by (source, target), with the
// relation ideal kept as a reduced echelon basis whose pivots sit on the
// longest paths.
class IdealBuilder {
 public:
  explicit IdealBuilder(const PresentationFile& p) : pf_(p), q_(p.quiver), F_(p.field), m_(p.maxlen) {
    const std::size_t n = q_.vertices.size();
    paths_.assign(n, std::vector<std::vector<PathWord>>(n));
    std::vector<PathWord> frontier;
    for (std::size_t v = 0; v < n; ++v) frontier.push_back({v, v, {}});
    std::vector<PathWord> all = frontier;
    for (std::size_t len = 1; len <= m_; ++len) {
      std::vector<PathWord> next;
      for (auto& pw : frontier)
        for (std::size_t a = 0; a < q_.arrows.size(); ++a)
          if (q_.arrows[a].source == pw.target) {
            PathWord x = pw;
            x.arrows.push_back(a);
            x.target = q_.arrows[a].target;
            next.push_back(x);
          }
      all.insert(all.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    // Descending (length, composition-order word) so that pivots land on long paths.
    auto key = [](const PathWord& p) {
      std::vector<std::size_t> w(p.arrows.rbegin(), p.arrows.rend());
      return std::make_pair(p.arrows.size(), w);
    };
    std::sort(all.begin(), all.end(), [&](const PathWord& a, const PathWord& b) { return key(a) > key(b); });
    for (auto& pw : all) {
      index_[{pw.source, pw.arrows}] = paths_[pw.source][pw.target].size();
      paths_[pw.source][pw.target].push_back(pw);
    }
    ideal_.assign(n, std::vector<Matrix>(n));
    pivots_.assign(n, std::vector<std::vector<std::size_t>>(n));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) ideal_[u][v] = Matrix(F_, 0, paths_[u][v].size());
  }

  std::shared_ptr<LinearCategory> build() {
    std::vector<std::tuple<std::size_t, std::size_t, Matrix>> seeds;
    for (auto& rel : pf_.relations) {
      std::size_t u = rel.terms[0].second.source, v = rel.terms[0].second.target;
      Matrix x(F_, 1, paths_[u][v].size());
      for (auto& [coef, pw] : rel.terms) {
        if (pw.length() > m_)
          throw BoundInsufficient("bound-insufficient: relation term " + path_name(q_, pw) + " is longer than maxlen");
        x.add_at(0, local(pw), coef);
      }
      seeds.emplace_back(u, v, x);
    }
    add(seeds);
    while (true) {
      std::size_t before = ideal_rank();
      compute_long_normal_forms();
      std::vector<std::tuple<std::size_t, std::size_t, Matrix>> fresh;
      const std::size_t n = q_.vertices.size();
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          for (std::size_t r = 0; r < ideal_[u][v].rows(); ++r) {
            Matrix x = ideal_[u][v].block(r, 0, 1, ideal_[u][v].cols());
            for (std::size_t a = 0; a < q_.arrows.size(); ++a) {
              if (q_.arrows[a].source == v)
                if (auto y = left_multiply(u, v, x, a)) fresh.emplace_back(u, q_.arrows[a].target, *y);
              if (q_.arrows[a].target == u)
                if (auto y = right_multiply(u, v, x, a)) fresh.emplace_back(q_.arrows[a].source, v, *y);
            }
          }
      add_overlaps(fresh);
      add(fresh);
      if (ideal_rank() == before) break;
    }
    compute_long_normal_forms();
    for (auto& [key, nf] : long_nf_)
      if (!nf) {
        PathWord pw{key.first, 0, key.second};
        pw.target = q_.arrows[key.second.back()].target;
        throw BoundInsufficient("bound-insufficient: path " + path_name(q_, pw) + " of length " + std::to_string(m_) +
                                " does not reduce modulo the relations");
      }
    return assemble();
  }

 private:
  using Key = std::pair<std::size_t, std::vector<std::size_t>>;

  std::size_t local(const PathWord& p) const { return index_.at({p.source, p.arrows}); }

  std::size_t ideal_rank() const {
    std::size_t r = 0;
    for (auto& row : ideal_)
      for (auto& m : row) r += m.rows();
    return r;
  }

  void add(const std::vector<std::tuple<std::size_t, std::size_t, Matrix>>& vecs) {
    const std::size_t n = q_.vertices.size();
    std::vector<std::vector<std::vector<Matrix>>> pending(n, std::vector<std::vector<Matrix>>(n));
    for (auto& [u, v, x] : vecs) pending[u][v].push_back(x);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        if (pending[u][v].empty()) continue;
        pending[u][v].insert(pending[u][v].begin(), ideal_[u][v]);
        Echelon e = rref(vstack(pending[u][v], F_, paths_[u][v].size()));
        ideal_[u][v] = e.reduced.block(0, 0, e.pivots.size(), paths_[u][v].size());
        pivots_[u][v] = e.pivots;
      }
  }

  Matrix normal_form(std::size_t u, std::size_t v, Matrix x) const {
    const Matrix& S = ideal_[u][v];
    for (std::size_t r = 0; r < S.rows(); ++r) {
      std::size_t p = pivots_[u][v][r];
      if (x.is_zero_at(0, p)) continue;
      x.add_scaled(-x.at(0, p), S.block(r, 0, 1, S.cols()));
    }
    return x;
  }

  bool has_long_terms(std::size_t u, std::size_t v, const Matrix& x) const {
    for (std::size_t i = 0; i < x.cols(); ++i)
      if (!x.is_zero_at(0, i) && paths_[u][v][i].length() >= m_) return true;
    return false;
  }

  void compute_long_normal_forms() {
    long_nf_.clear();
    const std::size_t n = q_.vertices.size();
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t i = 0; i < paths_[u][v].size(); ++i) {
          const PathWord& pw = paths_[u][v][i];
          if (pw.length() != m_) continue;
          Matrix x(F_, 1, paths_[u][v].size());
          x.set(0, i, 1L);
          x = normal_form(u, v, x);
          long_nf_[{u, pw.arrows}] = has_long_terms(u, v, x) ? std::nullopt : std::optional<Matrix>(x);
        }
  }

  // Adds coef * (a o path) to y in W(u, target(a)); paths of length maxlen+1 are
  // rewritten as a o NF(path). Returns false if such a rewrite is not yet available.
  bool push_left(std::size_t u, const PathWord& pw, std::size_t a, const Scalar& coef, Matrix& y) const {
    if (pw.length() < m_) {
      PathWord x = pw;
      x.arrows.push_back(a);
      x.target = q_.arrows[a].target;
      y.add_at(0, local(x), coef);
      return true;
    }
    auto it = long_nf_.find({u, pw.arrows});
    if (it == long_nf_.end() || !it->second) return false;
    const Matrix& nf = *it->second;
    for (std::size_t i = 0; i < nf.cols(); ++i) {
      if (nf.is_zero_at(0, i)) continue;
      PathWord x = paths_[u][pw.target][i];
      x.arrows.push_back(a);
      x.target = q_.arrows[a].target;
      y.add_at(0, local(x), coef * nf.at(0, i));
    }
    return true;
  }

  std::optional<Matrix> left_multiply(std::size_t u, std::size_t v, const Matrix& x, std::size_t a) const {
    std::size_t w = q_.arrows[a].target;
    Matrix y(F_, 1, paths_[u][w].size());
    for (std::size_t i = 0; i < x.cols(); ++i) {
      if (x.is_zero_at(0, i)) continue;
      if (!push_left(u, paths_[u][v][i], a, x.at(0, i), y)) return std::nullopt;
    }
    return normal_form(u, w, y);
  }

  std::optional<Matrix> right_multiply(std::size_t u, std::size_t v, const Matrix& x, std::size_t a) const {
    std::size_t t = q_.arrows[a].source;
    Matrix y(F_, 1, paths_[t][v].size());
    for (std::size_t i = 0; i < x.cols(); ++i) {
      if (x.is_zero_at(0, i)) continue;
      const PathWord& pw = paths_[u][v][i];
      PathWord full{t, v, {a}};
      full.arrows.insert(full.arrows.end(), pw.arrows.begin(), pw.arrows.end());
      if (full.length() <= m_) {
        y.add_at(0, local(full), x.at(0, i));
        continue;
      }
      PathWord front{t, 0, std::vector<std::size_t>(full.arrows.begin(), full.arrows.end() - 1)};
      front.target = q_.arrows[front.arrows.back()].target;
      if (!push_left(t, front, full.arrows.back(), x.at(0, i), y)) return std::nullopt;
    }
    return normal_form(t, v, y);
  }

  // For each path of length maxlen+1, the two rewrites a o NF(front) and NF(back) o b agree modulo the ideal.
  void add_overlaps(std::vector<std::tuple<std::size_t, std::size_t, Matrix>>& out) const {
    const std::size_t n = q_.vertices.size();
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        for (auto& pw : paths_[u][v]) {
          if (pw.length() != m_) continue;
          for (std::size_t a = 0; a < q_.arrows.size(); ++a) {
            if (q_.arrows[a].source != v) continue;
            std::size_t w = q_.arrows[a].target;
            Matrix lhs(F_, 1, paths_[u][w].size());
            if (!push_left(u, pw, a, Scalar::one(F_), lhs)) continue;
            // back = pw without its first arrow, followed by a
            PathWord back{q_.arrows[pw.arrows[0]].target, w,
                          std::vector<std::size_t>(pw.arrows.begin() + 1, pw.arrows.end())};
            back.arrows.push_back(a);
            auto it = long_nf_.find({back.source, back.arrows});
            if (it == long_nf_.end() || !it->second) continue;
            Matrix bx = *it->second;
            auto rhs = right_multiply(back.source, w, bx, pw.arrows[0]);
            if (!rhs) continue;
            out.emplace_back(u, w, normal_form(u, w, lhs) - *rhs);
          }
        }
  }

  std::shared_ptr<LinearCategory> assemble() const {
    const std::size_t n = q_.vertices.size();
    auto cat = std::make_shared<LinearCategory>();
    cat->field = F_;
    cat->objects = q_.vertices;
    cat->labels.assign(n, std::vector<std::vector<std::string>>(n));
    // basis[u][v]: local indices of non-pivot paths, ascending (length, word)
    std::vector<std::vector<std::vector<std::size_t>>> basis(n, std::vector<std::vector<std::size_t>>(n));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        std::vector<bool> piv(paths_[u][v].size(), false);
        for (auto p : pivots_[u][v]) piv[p] = true;
        for (std::size_t i = paths_[u][v].size(); i-- > 0;)
          if (!piv[i]) {
            basis[u][v].push_back(i);
            cat->labels[u][v].push_back(path_name(q_, paths_[u][v][i]));
          }
      }
    auto coords = [&](std::size_t u, std::size_t v, const Matrix& nf) {
      Matrix c(F_, basis[u][v].size(), 1);
      for (std::size_t k = 0; k < basis[u][v].size(); ++k) c.set(k, 0, nf.at(0, basis[u][v][k]));
      return c;
    };
    auto unit = [&](std::size_t u, std::size_t v, const PathWord& pw) {
      Matrix x(F_, 1, paths_[u][v].size());
      x.set(0, local(pw), 1L);
      return normal_form(u, v, x);
    };
    for (std::size_t v = 0; v < n; ++v) cat->identity.push_back(coords(v, v, unit(v, v, {v, v, {}})));
    cat->comp.assign(n, std::vector<std::vector<Matrix>>(n, std::vector<Matrix>(n)));
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d)
        for (std::size_t e = 0; e < n; ++e) {
          const std::size_t dcd = basis[c][d].size(), dde = basis[d][e].size();
          Matrix M(F_, basis[c][e].size(), dde * dcd);
          for (std::size_t g = 0; g < dde; ++g)
            for (std::size_t f = 0; f < dcd; ++f) {
              Matrix x = unit(c, d, paths_[c][d][basis[c][d][f]]);
              std::size_t cur = d;
              for (std::size_t a : paths_[d][e][basis[d][e][g]].arrows) {
                auto y = left_multiply(c, cur, x, a);
                if (!y) throw std::logic_error("composition left the reducible range");
                x = *y;
                cur = q_.arrows[a].target;
              }
              M.set_block(0, g * dcd + f, coords(c, e, x));
            }
          cat->comp[c][d][e] = M;
        }
    for (std::size_t a = 0; a < q_.arrows.size(); ++a) {
      const Arrow& ar = q_.arrows[a];
      cat->generators.push_back(
          {ar.name, ar.source, ar.target, coords(ar.source, ar.target, unit(ar.source, ar.target, {ar.source, ar.target, {a}}))});
    }
    return cat;
  }

  const PresentationFile& pf_;
  const Quiver& q_;
  Field F_;
  std::size_t m_;
  std::vector<std::vector<std::vector<PathWord>>> paths_;
  std::map<Key, std::size_t> index_;
  std::vector<std::vector<Matrix>> ideal_;
  std::vector<std::vector<std::vector<std::size_t>>> pivots_;
  std::map<Key, std::optional<Matrix>> long_nf_;
};

}  // namespace

std::shared_ptr<LinearCategory> build_linear_category(const PresentationFile& p) {
  IdealBuilder b(p);
  auto cat = b.build();
  if (p.reedy) {
    std::vector<int> deg = p.reedy->degree;
    ReedyStructure tmp;
    tmp.degree = deg;
    cat->generation_order = ascending_degree_order(tmp);
  }
  return cat;
}

ReedyStructure build_reedy_structure(const PresentationFile& p, const LinearCategory& cat) {
  if (!p.reedy) throw std::invalid_argument("presentation has no [reedy] section");
  std::vector<Generator> plus, minus;
  for (auto a : p.reedy->plus) plus.push_back(cat.generators[a]);
  for (auto a : p.reedy->minus) minus.push_back(cat.generators[a]);
  return reedy_from_generators(cat, p.reedy->degree, plus, minus);
}

std::optional<ReedyStructure> direct_structure(const PresentationFile& p, const LinearCategory& cat) {
  auto seq = left_rooted_sequence(p.quiver);
  if (seq.back().size() != p.quiver.vertices.size()) return std::nullopt;
  std::vector<int> deg(p.quiver.vertices.size(), -1);
  for (std::size_t k = 1; k < seq.size(); ++k)
    for (auto v : seq[k])
      if (deg[v] < 0) deg[v] = static_cast<int>(k) - 1;
  return reedy_from_generators(cat, deg, cat.generators, {});
}

}  // namespace reedy
