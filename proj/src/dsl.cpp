#include "fibcat/dsl.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fibcat::dsl {

namespace {

struct Token {
  enum class Kind { ident, number, punct, end };
  Kind kind = Kind::end;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> tokenize(const std::string& text, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(text[i++]);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(c);
      ++i;
      continue;
    }
    int tl = line, tc = col;
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (i < text.size() &&
             (isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        s += text[i];
        bump(text[i++]);
      }
      out.push_back({Token::Kind::ident, s, tl, tc});
      continue;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
        s += text[i];
        bump(text[i++]);
      }
      out.push_back({Token::Kind::number, s, tl, tc});
      continue;
    }
    if (text.compare(i, 3, "|->") == 0) {
      out.push_back({Token::Kind::punct, "|->", tl, tc});
      for (int k = 0; k < 3; ++k) bump(text[i++]);
      continue;
    }
    if (text.compare(i, 2, "->") == 0) {
      out.push_back({Token::Kind::punct, "->", tl, tc});
      for (int k = 0; k < 2; ++k) bump(text[i++]);
      continue;
    }
    if (std::string("{}()[]:;,.=").find(c) != std::string::npos) {
      out.push_back({Token::Kind::punct, std::string(1, c), tl, tc});
      bump(c);
      ++i;
      continue;
    }
    diags.push_back({Diagnostic::Severity::error, tl, tc,
                     std::string("unexpected character '") + c + "'", ""});
    bump(c);
    ++i;
  }
  out.push_back({Token::Kind::end, "", line, col});
  return out;
}

// ---- raw declarations --------------------------------------------------------

struct RawArrow {
  Token name, dom, cod;
};
struct RawComp {
  Token f, g, h;
};
struct RawCategory {
  Token name;
  std::vector<Token> objects;
  std::vector<RawArrow> arrows;
  std::vector<RawComp> comps;
};
struct RawFunctor {
  Token name, source, target;
  std::vector<std::pair<Token, Token>> objs, arrs;
};
struct RawFinmap {
  Token name, n, m;
  std::vector<Token> values;
};
struct RawFamily {
  Token name, n;
  std::vector<Token> sizes;
};
struct RawRelation {
  Token name, n;
  std::vector<std::pair<Token, Token>> pairs;
};
struct RawComorphism {
  Token name, over, from, to;
  std::vector<std::pair<Token, std::vector<Token>>> ats;
};
struct RawVect {
  Token name, n, q;
  std::vector<Token> dims;
};
struct RawGlue {
  Token name;
  std::optional<Token> fibration, target, target_projection;
  std::vector<std::pair<Token, Token>> objs, verts, carts;
};

struct RawDocument {
  std::vector<RawCategory> categories;
  std::vector<RawFunctor> functors;
  std::vector<RawFinmap> finmaps;
  std::vector<RawFamily> families;
  std::vector<RawRelation> relations;
  std::vector<RawComorphism> comorphisms;
  std::vector<RawVect> vectbundles;
  std::vector<RawGlue> gluedata;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : toks_(std::move(tokens)), diags_(diags) {}

  RawDocument parse() {
    RawDocument doc;
    while (!at_end()) {
      const Token& kw = peek();
      if (kw.kind != Token::Kind::ident) {
        error(kw, "expected a declaration keyword");
        advance();
        continue;
      }
      if (kw.text == "category") {
        advance();
        parse_category(doc);
      } else if (kw.text == "functor") {
        advance();
        parse_functor(doc);
      } else if (kw.text == "finmap") {
        advance();
        parse_finmap(doc);
      } else if (kw.text == "family") {
        advance();
        parse_family(doc);
      } else if (kw.text == "relation") {
        advance();
        parse_relation(doc);
      } else if (kw.text == "comorphism") {
        advance();
        parse_comorphism(doc);
      } else if (kw.text == "vectbundle") {
        advance();
        parse_vectbundle(doc);
      } else if (kw.text == "gluedata") {
        advance();
        parse_gluedata(doc);
      } else {
        error(kw,
              "unknown keyword '" + kw.text +
                  "', expected one of category, functor, finmap, family, relation, "
                  "comorphism, vectbundle, gluedata");
        advance();
        skip_declaration();
      }
    }
    return doc;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  const Token& advance() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  void error(const Token& t, const std::string& msg, const std::string& hint = "") {
    diags_.push_back({Diagnostic::Severity::error, t.line, t.col, msg, hint});
  }

  bool accept(const std::string& text) {
    if (peek().text == text && peek().kind != Token::Kind::end) {
      advance();
      return true;
    }
    return false;
  }

  bool expect(const std::string& text) {
    if (accept(text)) return true;
    error(peek(), "expected '" + text + "', found '" + peek().text + "'");
    return false;
  }

  std::optional<Token> expect_ident(const std::string& what) {
    if (peek().kind == Token::Kind::ident) return advance();
    error(peek(), "expected " + what + ", found '" + peek().text + "'");
    return std::nullopt;
  }

  std::optional<Token> expect_number(const std::string& what) {
    if (peek().kind == Token::Kind::number) return advance();
    error(peek(), "expected " + what + ", found '" + peek().text + "'");
    return std::nullopt;
  }

  // After a malformed statement: skip to the next ';' (consuming it), or stop
  // at '}' / end.
  void skip_statement() {
    while (!at_end() && peek().text != ";" && peek().text != "}") advance();
    accept(";");
  }

  void skip_declaration() {
    int depth = 0;
    while (!at_end()) {
      if (peek().text == "{") ++depth;
      if (peek().text == "}") {
        advance();
        if (--depth <= 0) return;
        continue;
      }
      if (depth == 0 && peek().text == ";") {
        advance();
        return;
      }
      advance();
    }
  }

  std::optional<std::vector<Token>> parse_number_list() {
    if (!expect("[")) return std::nullopt;
    std::vector<Token> out;
    if (accept("]")) return out;
    while (true) {
      auto v = expect_number("a number");
      if (!v) return std::nullopt;
      out.push_back(*v);
      if (accept("]")) break;
      if (!expect(",")) return std::nullopt;
    }
    return out;
  }

  void parse_category(RawDocument& doc) {
    RawCategory rc;
    auto name = expect_ident("a category name");
    if (!name || !expect("{")) {
      skip_declaration();
      return;
    }
    rc.name = *name;
    while (!at_end() && !accept("}")) {
      if (accept("objects")) {
        if (!expect(":")) {
          skip_statement();
          continue;
        }
        while (true) {
          auto o = expect_ident("an object name");
          if (!o) break;
          rc.objects.push_back(*o);
          if (accept(";")) break;
          if (!expect(",")) {
            skip_statement();
            break;
          }
        }
      } else if (accept("arrow")) {
        RawArrow ra;
        auto n = expect_ident("an arrow name");
        if (!n || !expect(":")) {
          skip_statement();
          continue;
        }
        ra.name = *n;
        auto d = expect_ident("a domain object");
        if (!d || !expect("->")) {
          skip_statement();
          continue;
        }
        ra.dom = *d;
        auto c = expect_ident("a codomain object");
        if (!c) {
          skip_statement();
          continue;
        }
        ra.cod = *c;
        expect(";");
        rc.arrows.push_back(ra);
      } else if (accept("compose")) {
        RawComp cp;
        auto f = expect_ident("an arrow name");
        if (!f || !expect(".")) {
          skip_statement();
          continue;
        }
        cp.f = *f;
        auto g = expect_ident("an arrow name");
        if (!g || !expect("=")) {
          skip_statement();
          continue;
        }
        cp.g = *g;
        auto h = expect_ident("an arrow name");
        if (!h) {
          skip_statement();
          continue;
        }
        cp.h = *h;
        expect(";");
        rc.comps.push_back(cp);
      } else {
        error(peek(), "expected 'objects', 'arrow' or 'compose' in category block");
        skip_statement();
      }
    }
    doc.categories.push_back(std::move(rc));
  }

  void parse_functor(RawDocument& doc) {
    RawFunctor rf;
    auto name = expect_ident("a functor name");
    if (!name || !expect(":")) {
      skip_declaration();
      return;
    }
    rf.name = *name;
    auto s = expect_ident("a source category");
    if (!s || !expect("->")) {
      skip_declaration();
      return;
    }
    rf.source = *s;
    auto t = expect_ident("a target category");
    if (!t || !expect("{")) {
      skip_declaration();
      return;
    }
    rf.target = *t;
    while (!at_end() && !accept("}")) {
      bool is_obj = false;
      if (accept("object")) {
        is_obj = true;
      } else if (!accept("arrow")) {
        error(peek(), "expected 'object' or 'arrow' in functor block");
        skip_statement();
        continue;
      }
      auto a = expect_ident("a name");
      if (!a || !expect("|->")) {
        skip_statement();
        continue;
      }
      auto b = expect_ident("a name");
      if (!b) {
        skip_statement();
        continue;
      }
      expect(";");
      (is_obj ? rf.objs : rf.arrs).push_back({*a, *b});
    }
    doc.functors.push_back(std::move(rf));
  }

  void parse_finmap(RawDocument& doc) {
    RawFinmap rm;
    auto name = expect_ident("a finmap name");
    if (!name || !expect(":")) {
      skip_declaration();
      return;
    }
    rm.name = *name;
    auto n = expect_number("a domain size");
    if (!n || !expect("->")) {
      skip_declaration();
      return;
    }
    rm.n = *n;
    auto m = expect_number("a codomain size");
    if (!m || !expect("=")) {
      skip_declaration();
      return;
    }
    rm.m = *m;
    auto vals = parse_number_list();
    if (!vals) {
      skip_declaration();
      return;
    }
    rm.values = *vals;
    expect(";");
    doc.finmaps.push_back(std::move(rm));
  }

  void parse_family(RawDocument& doc) {
    RawFamily rf;
    auto name = expect_ident("a family name");
    if (!name || !expect("over")) {
      skip_declaration();
      return;
    }
    rf.name = *name;
    auto n = expect_number("a base size");
    if (!n || !expect("=")) {
      skip_declaration();
      return;
    }
    rf.n = *n;
    auto sizes = parse_number_list();
    if (!sizes) {
      skip_declaration();
      return;
    }
    rf.sizes = *sizes;
    expect(";");
    doc.families.push_back(std::move(rf));
  }

  void parse_relation(RawDocument& doc) {
    RawRelation rr;
    auto name = expect_ident("a relation name");
    if (!name || !expect("on")) {
      skip_declaration();
      return;
    }
    rr.name = *name;
    auto n = expect_number("a base size");
    if (!n || !expect("=") || !expect("{")) {
      skip_declaration();
      return;
    }
    rr.n = *n;
    if (!accept("}")) {
      while (true) {
        if (!expect("(")) {
          skip_declaration();
          return;
        }
        auto i = expect_number("a base point");
        if (!i || !expect(",")) {
          skip_declaration();
          return;
        }
        auto j = expect_number("a base point");
        if (!j || !expect(")")) {
          skip_declaration();
          return;
        }
        rr.pairs.push_back({*i, *j});
        if (accept("}")) break;
        if (!expect(",")) {
          skip_declaration();
          return;
        }
      }
    }
    expect(";");
    doc.relations.push_back(std::move(rr));
  }

  void parse_comorphism(RawDocument& doc) {
    RawComorphism rc;
    auto name = expect_ident("a comorphism name");
    if (!name || !expect("over")) {
      skip_declaration();
      return;
    }
    rc.name = *name;
    auto over = expect_ident("a finmap name");
    if (!over || !expect("from")) {
      skip_declaration();
      return;
    }
    rc.over = *over;
    auto from = expect_ident("a family name");
    if (!from || !expect("to")) {
      skip_declaration();
      return;
    }
    rc.from = *from;
    auto to = expect_ident("a family name");
    if (!to || !expect("{")) {
      skip_declaration();
      return;
    }
    rc.to = *to;
    while (!at_end() && !accept("}")) {
      if (!accept("at")) {
        error(peek(), "expected 'at' in comorphism block");
        skip_statement();
        continue;
      }
      auto a = expect_number("a base point");
      if (!a || !expect(":")) {
        skip_statement();
        continue;
      }
      auto vals = parse_number_list();
      if (!vals) {
        skip_statement();
        continue;
      }
      expect(";");
      rc.ats.push_back({*a, *vals});
    }
    doc.comorphisms.push_back(std::move(rc));
  }

  void parse_vectbundle(RawDocument& doc) {
    RawVect rv;
    auto name = expect_ident("a vectbundle name");
    if (!name || !expect("over")) {
      skip_declaration();
      return;
    }
    rv.name = *name;
    auto n = expect_number("a base size");
    if (!n || !expect("field")) {
      skip_declaration();
      return;
    }
    rv.n = *n;
    auto q = expect_number("a field order");
    if (!q || !expect("dims")) {
      skip_declaration();
      return;
    }
    rv.q = *q;
    auto dims = parse_number_list();
    if (!dims) {
      skip_declaration();
      return;
    }
    rv.dims = *dims;
    expect(";");
    doc.vectbundles.push_back(std::move(rv));
  }

  void parse_gluedata(RawDocument& doc) {
    RawGlue rg;
    auto name = expect_ident("a gluedata name");
    if (!name || !expect("{")) {
      skip_declaration();
      return;
    }
    rg.name = *name;
    while (!at_end() && !accept("}")) {
      if (accept("fibration")) {
        if (expect(":")) rg.fibration = expect_ident("a functor name");
        expect(";");
      } else if (accept("target_projection")) {
        if (expect(":")) rg.target_projection = expect_ident("a functor name");
        expect(";");
      } else if (accept("target")) {
        if (expect(":")) rg.target = expect_ident("a category name");
        expect(";");
      } else if (peek().text == "object" || peek().text == "vertical" ||
                 peek().text == "cartesian") {
        std::string which = advance().text;
        auto a = expect_ident("a name");
        if (!a || !expect("|->")) {
          skip_statement();
          continue;
        }
        auto b = expect_ident("a name");
        if (!b) {
          skip_statement();
          continue;
        }
        expect(";");
        if (which == "object")
          rg.objs.push_back({*a, *b});
        else if (which == "vertical")
          rg.verts.push_back({*a, *b});
        else
          rg.carts.push_back({*a, *b});
      } else {
        error(peek(),
              "expected 'fibration', 'target', 'target_projection', 'object', "
              "'vertical' or 'cartesian' in gluedata block");
        skip_statement();
      }
    }
    doc.gluedata.push_back(std::move(rg));
  }
};

// ---- resolution ----------------------------------------------------------------

class Builder {
 public:
  Builder(RawDocument raw, std::vector<Diagnostic>& diags)
      : raw_(std::move(raw)), diags_(diags) {}

  Document build() {
    Document doc;
    std::set<std::string> names;
    auto claim = [&](const Token& t) {
      if (!names.insert(t.text).second)
        error(t, "duplicate declaration name '" + t.text + "'");
    };
    for (auto& r : raw_.categories) claim(r.name);
    for (auto& r : raw_.functors) claim(r.name);
    for (auto& r : raw_.finmaps) claim(r.name);
    for (auto& r : raw_.families) claim(r.name);
    for (auto& r : raw_.relations) claim(r.name);
    for (auto& r : raw_.comorphisms) claim(r.name);
    for (auto& r : raw_.vectbundles) claim(r.name);
    for (auto& r : raw_.gluedata) claim(r.name);

    for (auto& r : raw_.categories) build_category(doc, r);
    for (auto& r : raw_.functors) build_functor(doc, r);
    for (auto& r : raw_.finmaps) build_finmap(doc, r);
    for (auto& r : raw_.families) build_family(doc, r);
    for (auto& r : raw_.relations) build_relation(doc, r);
    for (auto& r : raw_.comorphisms) build_comorphism(doc, r);
    for (auto& r : raw_.vectbundles) build_vectbundle(doc, r);
    for (auto& r : raw_.gluedata) build_gluedata(doc, r);
    return doc;
  }

 private:
  RawDocument raw_;
  std::vector<Diagnostic>& diags_;

  void error(const Token& t, const std::string& msg, const std::string& hint = "") {
    diags_.push_back({Diagnostic::Severity::error, t.line, t.col, msg, hint});
  }
  void warn(const Token& t, const std::string& msg) {
    diags_.push_back({Diagnostic::Severity::warning, t.line, t.col, msg, ""});
  }

  void build_category(Document& doc, const RawCategory& r) {
    auto cd = std::make_unique<CategoryDecl>();
    cd->name = r.name.text;
    for (const Token& o : r.objects) {
      if (cd->obj_index.count(o.text)) {
        error(o, "duplicate object '" + o.text + "'");
        continue;
      }
      cd->obj_index[o.text] = cd->cat.add_object();
      cd->obj_names.push_back(o.text);
    }
    for (int i = 0; i < cd->cat.n_objects; ++i) {
      cd->cat.add_identity(i);
      std::string idn = "id_" + cd->obj_names[i];
      cd->arrow_names.push_back(idn);
      cd->arrow_index[idn] = i;
    }
    for (const RawArrow& a : r.arrows) {
      if (a.name.text.rfind("id_", 0) == 0) {
        error(a.name, "arrow names starting with 'id_' are reserved for identities");
        continue;
      }
      if (cd->arrow_index.count(a.name.text)) {
        error(a.name, "duplicate arrow '" + a.name.text + "'");
        continue;
      }
      auto d = cd->obj_index.find(a.dom.text);
      if (d == cd->obj_index.end()) {
        error(a.dom, "unknown object '" + a.dom.text + "'");
        continue;
      }
      auto c = cd->obj_index.find(a.cod.text);
      if (c == cd->obj_index.end()) {
        error(a.cod, "unknown object '" + a.cod.text + "'");
        continue;
      }
      cd->arrow_index[a.name.text] = cd->cat.add_arrow(d->second, c->second);
      cd->arrow_names.push_back(a.name.text);
    }
    cd->cat.init_comp();
    for (const RawComp& cp : r.comps) {
      auto f = cd->arrow_index.find(cp.f.text);
      if (f == cd->arrow_index.end()) {
        error(cp.f, "unknown arrow '" + cp.f.text + "'");
        continue;
      }
      auto g = cd->arrow_index.find(cp.g.text);
      if (g == cd->arrow_index.end()) {
        error(cp.g, "unknown arrow '" + cp.g.text + "'");
        continue;
      }
      auto h = cd->arrow_index.find(cp.h.text);
      if (h == cd->arrow_index.end()) {
        error(cp.h, "unknown arrow '" + cp.h.text + "'");
        continue;
      }
      if (!cd->cat.composable(f->second, g->second)) {
        error(cp.f, "arrows '" + cp.f.text + "' and '" + cp.g.text +
                        "' are not composable");
        continue;
      }
      ArrowId existing = cd->cat.compose(f->second, g->second);
      if (existing != kNone && existing != h->second) {
        error(cp.h, "conflicting composite for " + cp.f.text + "." + cp.g.text);
        continue;
      }
      cd->cat.set_comp(f->second, g->second, h->second);
    }
    // Every composable pair of non-identity arrows needs an entry.
    for (ArrowId f = cd->cat.n_objects; f < cd->cat.n_arrows(); ++f)
      for (ArrowId g = cd->cat.n_objects; g < cd->cat.n_arrows(); ++g)
        if (cd->cat.composable(f, g) && cd->cat.compose(f, g) == kNone)
          error(r.name, "missing composition for " + cd->arrow_names[f] + "." +
                            cd->arrow_names[g]);
    ValidationReport v = validate_category(cd->cat);
    if (!v.pass)
      error(r.name, "category '" + cd->name + "' fails validation: " + v.rule +
                        " (" + v.detail + ")");
    doc.categories.push_back(std::move(cd));
  }

  void build_functor(Document& doc, const RawFunctor& r) {
    const CategoryDecl* src = doc.category(r.source.text);
    if (!src) {
      error(r.source, "unknown category '" + r.source.text + "'");
      return;
    }
    const CategoryDecl* dst = doc.category(r.target.text);
    if (!dst) {
      error(r.target, "unknown category '" + r.target.text + "'");
      return;
    }
    auto fd = std::make_unique<FunctorDecl>();
    fd->name = r.name.text;
    fd->source = r.source.text;
    fd->target = r.target.text;
    fd->fun.source = &src->cat;
    fd->fun.target = &dst->cat;
    fd->fun.obj_map.assign(src->cat.n_objects, kNone);
    fd->fun.arr_map.assign(src->cat.n_arrows(), kNone);
    for (auto& [a, b] : r.objs) {
      auto ai = src->obj_index.find(a.text);
      if (ai == src->obj_index.end()) {
        error(a, "unknown object '" + a.text + "' in " + src->name);
        return;
      }
      auto bi = dst->obj_index.find(b.text);
      if (bi == dst->obj_index.end()) {
        error(b, "unknown object '" + b.text + "' in " + dst->name);
        return;
      }
      if (fd->fun.obj_map[ai->second] != kNone) {
        error(a, "object '" + a.text + "' mapped twice");
        return;
      }
      fd->fun.obj_map[ai->second] = bi->second;
    }
    for (int o = 0; o < src->cat.n_objects; ++o)
      if (fd->fun.obj_map[o] == kNone) {
        error(r.name, "object '" + src->obj_names[o] + "' is not mapped");
        return;
      }
    for (auto& [a, b] : r.arrs) {
      auto ai = src->arrow_index.find(a.text);
      if (ai == src->arrow_index.end()) {
        error(a, "unknown arrow '" + a.text + "' in " + src->name);
        return;
      }
      auto bi = dst->arrow_index.find(b.text);
      if (bi == dst->arrow_index.end()) {
        error(b, "unknown arrow '" + b.text + "' in " + dst->name);
        return;
      }
      if (fd->fun.arr_map[ai->second] != kNone) {
        error(a, "arrow '" + a.text + "' mapped twice");
        return;
      }
      fd->fun.arr_map[ai->second] = bi->second;
    }
    for (int o = 0; o < src->cat.n_objects; ++o) {
      ArrowId id = src->cat.identity[o];
      ArrowId forced = dst->cat.identity[fd->fun.obj_map[o]];
      if (fd->fun.arr_map[id] == kNone) fd->fun.arr_map[id] = forced;
    }
    for (ArrowId f = 0; f < src->cat.n_arrows(); ++f)
      if (fd->fun.arr_map[f] == kNone) {
        error(r.name, "arrow '" + src->arrow_names[f] + "' is not mapped");
        return;
      }
    ValidationReport v = validate_functor(fd->fun);
    if (!v.pass) {
      error(r.name, "functor '" + fd->name + "' fails validation: " + v.rule + " (" +
                        v.detail + ")");
      return;
    }
    doc.functors.push_back(std::move(fd));
  }

  void build_finmap(Document& doc, const RawFinmap& r) {
    FinMapDecl d;
    d.name = r.name.text;
    d.fn.dom_size = std::stoi(r.n.text);
    d.fn.cod_size = std::stoi(r.m.text);
    if (static_cast<int>(r.values.size()) != d.fn.dom_size) {
      error(r.name, "finmap '" + d.name + "' needs exactly " +
                        std::to_string(d.fn.dom_size) + " values");
      return;
    }
    for (const Token& v : r.values) {
      int val = std::stoi(v.text);
      if (val >= d.fn.cod_size) {
        error(v, "value " + v.text + " out of range for codomain " + r.m.text);
        return;
      }
      d.fn.values.push_back(val);
    }
    doc.finmaps.push_back(std::move(d));
  }

  void build_family(Document& doc, const RawFamily& r) {
    FamilyDecl d;
    d.name = r.name.text;
    d.bundle.base_size = std::stoi(r.n.text);
    if (static_cast<int>(r.sizes.size()) != d.bundle.base_size) {
      error(r.name, "family '" + d.name + "' needs exactly " + r.n.text + " fiber sizes");
      return;
    }
    for (const Token& v : r.sizes) d.bundle.fibers.push_back(std::stoi(v.text));
    doc.families.push_back(std::move(d));
  }

  void build_relation(Document& doc, const RawRelation& r) {
    RelationDecl d;
    d.name = r.name.text;
    int n = std::stoi(r.n.text);
    std::vector<std::pair<int, int>> pairs;
    for (auto& [i, j] : r.pairs) {
      int a = std::stoi(i.text), b = std::stoi(j.text);
      if (a >= n || b >= n) {
        error(i, "relation pair (" + i.text + ", " + j.text + ") out of range");
        return;
      }
      pairs.emplace_back(a, b);
    }
    int missing = 0;
    for (int b = 0; b < n; ++b)
      if (std::find(pairs.begin(), pairs.end(), std::make_pair(b, b)) == pairs.end())
        ++missing;
    if (missing > 0)
      warn(r.name, "relation '" + d.name + "': " + std::to_string(missing) +
                       " reflexive pair(s) added automatically");
    d.rel = NeighborhoodRelation::from_pairs(n, std::move(pairs), true);
    doc.relations.push_back(std::move(d));
  }

  void build_comorphism(Document& doc, const RawComorphism& r) {
    const FinMapDecl* over = doc.finmap(r.over.text);
    if (!over) {
      error(r.over, "unknown finmap '" + r.over.text + "'");
      return;
    }
    const FamilyDecl* from = doc.family(r.from.text);
    if (!from) {
      error(r.from, "unknown family '" + r.from.text + "'");
      return;
    }
    const FamilyDecl* to = doc.family(r.to.text);
    if (!to) {
      error(r.to, "unknown family '" + r.to.text + "'");
      return;
    }
    const FinFunction& alpha = over->fn;
    if (from->bundle.base_size != alpha.dom_size || to->bundle.base_size != alpha.cod_size) {
      error(r.name, "comorphism bases do not match the base map");
      return;
    }
    ComorphismDecl d;
    d.name = r.name.text;
    d.over = r.over.text;
    d.from = r.from.text;
    d.to = r.to.text;
    d.com.base_map = alpha;
    d.com.components.assign(alpha.dom_size, FinFunction{});
    std::vector<char> seen(alpha.dom_size, 0);
    for (auto& [at, vals] : r.ats) {
      int a = std::stoi(at.text);
      if (a >= alpha.dom_size) {
        error(at, "base point " + at.text + " out of range");
        return;
      }
      if (seen[a]) {
        error(at, "duplicate component at " + at.text);
        return;
      }
      seen[a] = 1;
      int dom = to->bundle.fibers[alpha(a)], cod = from->bundle.fibers[a];
      if (static_cast<int>(vals.size()) != dom) {
        error(at, "component at " + at.text + " needs exactly " + std::to_string(dom) +
                      " values");
        return;
      }
      FinFunction comp{dom, cod, {}};
      for (const Token& v : vals) {
        int value = std::stoi(v.text);
        if (value >= cod) {
          error(v, "component value " + v.text + " out of range");
          return;
        }
        comp.values.push_back(value);
      }
      d.com.components[a] = std::move(comp);
    }
    for (int a = 0; a < alpha.dom_size; ++a)
      if (!seen[a]) {
        error(r.name, "missing component at " + std::to_string(a));
        return;
      }
    doc.comorphisms.push_back(std::move(d));
  }

  void build_vectbundle(Document& doc, const RawVect& r) {
    VectBundleDecl d;
    d.name = r.name.text;
    d.bundle.base_size = std::stoi(r.n.text);
    d.bundle.field_order = std::stoi(r.q.text);
    if (d.bundle.field_order != 2 && d.bundle.field_order != 3 &&
        d.bundle.field_order != 4 && d.bundle.field_order != 5) {
      error(r.q, "field order must be one of 2, 3, 4, 5");
      return;
    }
    if (static_cast<int>(r.dims.size()) != d.bundle.base_size) {
      error(r.name, "vectbundle '" + d.name + "' needs exactly " + r.n.text + " dims");
      return;
    }
    for (const Token& v : r.dims) d.bundle.dims.push_back(std::stoi(v.text));
    doc.vectbundles.push_back(std::move(d));
  }

  void build_gluedata(Document& doc, const RawGlue& r) {
    if (!r.fibration || !r.target) {
      error(r.name, "gluedata needs 'fibration' and 'target' entries");
      return;
    }
    const FunctorDecl* pi = doc.functor_decl(r.fibration->text);
    if (!pi) {
      error(*r.fibration, "unknown functor '" + r.fibration->text + "'");
      return;
    }
    const CategoryDecl* target = doc.category(r.target->text);
    if (!target) {
      error(*r.target, "unknown category '" + r.target->text + "'");
      return;
    }
    const FunctorDecl* proj = nullptr;
    if (r.target_projection) {
      proj = doc.functor_decl(r.target_projection->text);
      if (!proj) {
        error(*r.target_projection, "unknown functor '" + r.target_projection->text + "'");
        return;
      }
    }
    const CategoryDecl* src = doc.category(pi->source);

    auto gd = std::make_unique<GlueDataDecl>();
    gd->name = r.name.text;
    gd->fibration = pi->name;
    gd->target = target->name;
    gd->target_projection = proj ? proj->name : "";
    gd->data.pi = &pi->fun;
    gd->data.target = &target->cat;
    gd->data.target_projection = proj ? &proj->fun : nullptr;
    gd->data.obj_map.assign(src->cat.n_objects, kNone);
    gd->data.vert_map.assign(src->cat.n_arrows(), kNone);
    gd->data.cart_map.assign(src->cat.n_arrows(), kNone);

    for (auto& [a, b] : r.objs) {
      auto ai = src->obj_index.find(a.text);
      if (ai == src->obj_index.end()) {
        error(a, "unknown object '" + a.text + "'");
        return;
      }
      auto bi = target->obj_index.find(b.text);
      if (bi == target->obj_index.end()) {
        error(b, "unknown object '" + b.text + "'");
        return;
      }
      gd->data.obj_map[ai->second] = bi->second;
    }
    for (int o = 0; o < src->cat.n_objects; ++o)
      if (gd->data.obj_map[o] == kNone) {
        error(r.name, "object '" + src->obj_names[o] + "' is not mapped");
        return;
      }

    std::vector<char> cart = cartesian_flags(pi->fun);
    auto fill = [&](const std::vector<std::pair<Token, Token>>& entries,
                    std::vector<ArrowId>& table, auto in_domain,
                    const char* which) -> bool {
      for (auto& [a, b] : entries) {
        auto ai = src->arrow_index.find(a.text);
        if (ai == src->arrow_index.end()) {
          error(a, "unknown arrow '" + a.text + "'");
          return false;
        }
        auto bi = target->arrow_index.find(b.text);
        if (bi == target->arrow_index.end()) {
          error(b, "unknown arrow '" + b.text + "'");
          return false;
        }
        if (!in_domain(ai->second)) {
          error(a, std::string("arrow '") + a.text + "' is not " + which);
          return false;
        }
        table[ai->second] = bi->second;
      }
      return true;
    };
    bool okv = fill(r.verts, gd->data.vert_map,
                    [&](ArrowId f) { return is_vertical(pi->fun, f); }, "vertical");
    bool okc = fill(r.carts, gd->data.cart_map,
                    [&](ArrowId f) { return static_cast<bool>(cart[f]); }, "Cartesian");
    if (!okv || !okc) return;
    for (ObjId o = 0; o < src->cat.n_objects; ++o) {
      ArrowId id = src->cat.identity[o];
      ArrowId forced = target->cat.identity[gd->data.obj_map[o]];
      if (gd->data.vert_map[id] == kNone) gd->data.vert_map[id] = forced;
      if (gd->data.cart_map[id] == kNone) gd->data.cart_map[id] = forced;
    }
    for (ArrowId f = 0; f < src->cat.n_arrows(); ++f) {
      if (is_vertical(pi->fun, f) && gd->data.vert_map[f] == kNone) {
        error(r.name, "vertical arrow '" + src->arrow_names[f] + "' is not mapped");
        return;
      }
      if (cart[f] && gd->data.cart_map[f] == kNone) {
        error(r.name, "Cartesian arrow '" + src->arrow_names[f] + "' is not mapped");
        return;
      }
    }
    doc.gluedata.push_back(std::move(gd));
  }
};

}  // namespace

const CategoryDecl* Document::category(const std::string& name) const {
  for (const auto& c : categories)
    if (c->name == name) return c.get();
  return nullptr;
}
const FunctorDecl* Document::functor_decl(const std::string& name) const {
  for (const auto& f : functors)
    if (f->name == name) return f.get();
  return nullptr;
}
const FinMapDecl* Document::finmap(const std::string& name) const {
  for (const auto& f : finmaps)
    if (f.name == name) return &f;
  return nullptr;
}
const FamilyDecl* Document::family(const std::string& name) const {
  for (const auto& f : families)
    if (f.name == name) return &f;
  return nullptr;
}
const RelationDecl* Document::relation(const std::string& name) const {
  for (const auto& f : relations)
    if (f.name == name) return &f;
  return nullptr;
}
const ComorphismDecl* Document::comorphism(const std::string& name) const {
  for (const auto& f : comorphisms)
    if (f.name == name) return &f;
  return nullptr;
}
const VectBundleDecl* Document::vectbundle(const std::string& name) const {
  for (const auto& f : vectbundles)
    if (f.name == name) return &f;
  return nullptr;
}
const GlueDataDecl* Document::gluedata_decl(const std::string& name) const {
  for (const auto& f : gluedata)
    if (f->name == name) return f.get();
  return nullptr;
}

ParseResult parse_document(const std::string& text) {
  ParseResult result;
  std::vector<Token> tokens = tokenize(text, result.diagnostics);
  Parser parser(std::move(tokens), result.diagnostics);
  RawDocument raw = parser.parse();
  Builder builder(std::move(raw), result.diagnostics);
  Document doc = builder.build();
  bool has_error = false;
  for (const Diagnostic& d : result.diagnostics)
    has_error = has_error || d.severity == Diagnostic::Severity::error;
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::make_pair(a.line, a.column) <
                            std::make_pair(b.line, b.column);
                   });
  if (!has_error) result.doc = std::move(doc);
  return result;
}

namespace {

std::string number_list(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

void emit_category(std::ostream& os, const CategoryDecl& c) {
  os << "category " << c.name << " {\n";
  if (c.cat.n_objects > 0) {
    os << "  objects: ";
    for (int o = 0; o < c.cat.n_objects; ++o)
      os << (o ? ", " : "") << c.obj_names[o];
    os << ";\n";
  }
  for (ArrowId f = c.cat.n_objects; f < c.cat.n_arrows(); ++f)
    os << "  arrow " << c.arrow_names[f] << ": " << c.obj_names[c.cat.dom(f)] << " -> "
       << c.obj_names[c.cat.cod(f)] << ";\n";
  for (ArrowId f = c.cat.n_objects; f < c.cat.n_arrows(); ++f)
    for (ArrowId g = c.cat.n_objects; g < c.cat.n_arrows(); ++g)
      if (c.cat.composable(f, g))
        os << "  compose " << c.arrow_names[f] << "." << c.arrow_names[g] << " = "
           << c.arrow_names[c.cat.compose(f, g)] << ";\n";
  os << "}\n";
}

void emit_functor(std::ostream& os, const Document& doc, const FunctorDecl& f) {
  const CategoryDecl* src = doc.category(f.source);
  const CategoryDecl* dst = doc.category(f.target);
  os << "functor " << f.name << ": " << f.source << " -> " << f.target << " {\n";
  for (int o = 0; o < src->cat.n_objects; ++o)
    os << "  object " << src->obj_names[o] << " |-> " << dst->obj_names[f.fun.obj_map[o]]
       << ";\n";
  for (ArrowId a = src->cat.n_objects; a < src->cat.n_arrows(); ++a)
    os << "  arrow " << src->arrow_names[a] << " |-> " << dst->arrow_names[f.fun.arr_map[a]]
       << ";\n";
  os << "}\n";
}

void emit_gluedata(std::ostream& os, const Document& doc, const GlueDataDecl& g) {
  const FunctorDecl* pi = doc.functor_decl(g.fibration);
  const CategoryDecl* src = doc.category(pi->source);
  const CategoryDecl* target = doc.category(g.target);
  os << "gluedata " << g.name << " {\n";
  os << "  fibration: " << g.fibration << ";\n";
  os << "  target: " << g.target << ";\n";
  if (!g.target_projection.empty())
    os << "  target_projection: " << g.target_projection << ";\n";
  for (int o = 0; o < src->cat.n_objects; ++o)
    os << "  object " << src->obj_names[o] << " |-> "
       << target->obj_names[g.data.obj_map[o]] << ";\n";
  for (ArrowId f = src->cat.n_objects; f < src->cat.n_arrows(); ++f)
    if (g.data.vert_map[f] != kNone)
      os << "  vertical " << src->arrow_names[f] << " |-> "
         << target->arrow_names[g.data.vert_map[f]] << ";\n";
  for (ArrowId f = src->cat.n_objects; f < src->cat.n_arrows(); ++f)
    if (g.data.cart_map[f] != kNone)
      os << "  cartesian " << src->arrow_names[f] << " |-> "
         << target->arrow_names[g.data.cart_map[f]] << ";\n";
  os << "}\n";
}

}  // namespace

std::string emit_document(const Document& doc) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&]() {
    if (!first) os << "\n";
    first = false;
  };

  std::vector<const CategoryDecl*> cats;
  for (const auto& c : doc.categories) cats.push_back(c.get());
  std::sort(cats.begin(), cats.end(),
            [](auto* a, auto* b) { return a->name < b->name; });
  for (const CategoryDecl* c : cats) {
    sep();
    emit_category(os, *c);
  }

  std::vector<const FunctorDecl*> funs;
  for (const auto& f : doc.functors) funs.push_back(f.get());
  std::sort(funs.begin(), funs.end(),
            [](auto* a, auto* b) { return a->name < b->name; });
  for (const FunctorDecl* f : funs) {
    sep();
    emit_functor(os, doc, *f);
  }

  std::vector<const FinMapDecl*> fms;
  for (const auto& f : doc.finmaps) fms.push_back(&f);
  std::sort(fms.begin(), fms.end(), [](auto* a, auto* b) { return a->name < b->name; });
  for (auto* f : fms) {
    sep();
    os << "finmap " << f->name << ": " << f->fn.dom_size << " -> " << f->fn.cod_size
       << " = " << number_list(f->fn.values) << ";\n";
  }

  std::vector<const FamilyDecl*> fams;
  for (const auto& f : doc.families) fams.push_back(&f);
  std::sort(fams.begin(), fams.end(), [](auto* a, auto* b) { return a->name < b->name; });
  for (auto* f : fams) {
    sep();
    os << "family " << f->name << " over " << f->bundle.base_size << " = "
       << number_list(f->bundle.fibers) << ";\n";
  }

  std::vector<const RelationDecl*> rels;
  for (const auto& r : doc.relations) rels.push_back(&r);
  std::sort(rels.begin(), rels.end(), [](auto* a, auto* b) { return a->name < b->name; });
  for (auto* r : rels) {
    sep();
    os << "relation " << r->name << " on " << r->rel.base_size << " = { ";
    for (size_t i = 0; i < r->rel.pairs.size(); ++i) {
      if (i) os << ", ";
      os << "(" << r->rel.pairs[i].first << ", " << r->rel.pairs[i].second << ")";
    }
    os << " };\n";
  }

  std::vector<const ComorphismDecl*> coms;
  for (const auto& c : doc.comorphisms) coms.push_back(&c);
  std::sort(coms.begin(), coms.end(), [](auto* a, auto* b) { return a->name < b->name; });
  for (auto* c : coms) {
    sep();
    os << "comorphism " << c->name << " over " << c->over << " from " << c->from << " to "
       << c->to << " {\n";
    for (size_t a = 0; a < c->com.components.size(); ++a)
      os << "  at " << a << ": " << number_list(c->com.components[a].values) << ";\n";
    os << "}\n";
  }

  std::vector<const VectBundleDecl*> vbs;
  for (const auto& v : doc.vectbundles) vbs.push_back(&v);
  std::sort(vbs.begin(), vbs.end(), [](auto* a, auto* b) { return a->name < b->name; });
  for (auto* v : vbs) {
    sep();
    os << "vectbundle " << v->name << " over " << v->bundle.base_size << " field "
       << v->bundle.field_order << " dims " << number_list(v->bundle.dims) << ";\n";
  }

  std::vector<const GlueDataDecl*> gds;
  for (const auto& g : doc.gluedata) gds.push_back(g.get());
  std::sort(gds.begin(), gds.end(), [](auto* a, auto* b) { return a->name < b->name; });
  for (auto* g : gds) {
    sep();
    emit_gluedata(os, doc, *g);
  }

  return os.str();
}

CategoryReindex decl_from_category(const std::string& name, const FiniteCategory& cat,
                                   const std::vector<std::string>* obj_names) {
  CategoryReindex out;
  out.decl = std::make_unique<CategoryDecl>();
  CategoryDecl& d = *out.decl;
  d.name = name;
  for (int o = 0; o < cat.n_objects; ++o) {
    std::string on = obj_names ? (*obj_names)[o] : "o" + std::to_string(o);
    d.obj_names.push_back(on);
    d.obj_index[on] = d.cat.add_object();
  }
  out.arrow_to_decl.assign(cat.n_arrows(), kNone);
  for (int o = 0; o < cat.n_objects; ++o) {
    d.cat.add_identity(o);
    std::string idn = "id_" + d.obj_names[o];
    d.arrow_names.push_back(idn);
    d.arrow_index[idn] = o;
    out.arrow_to_decl[cat.identity[o]] = o;
  }
  int next = 0;
  for (ArrowId f = 0; f < cat.n_arrows(); ++f) {
    if (cat.is_identity(f)) continue;
    std::string an = "c" + std::to_string(next++);
    out.arrow_to_decl[f] = d.cat.add_arrow(cat.dom(f), cat.cod(f));
    d.arrow_names.push_back(an);
    d.arrow_index[an] = out.arrow_to_decl[f];
  }
  d.cat.init_comp();
  for (ArrowId f = 0; f < cat.n_arrows(); ++f)
    for (ArrowId g = 0; g < cat.n_arrows(); ++g)
      if (cat.compose(f, g) != kNone)
        d.cat.set_comp(out.arrow_to_decl[f], out.arrow_to_decl[g],
                       out.arrow_to_decl[cat.compose(f, g)]);
  return out;
}

std::string emit_functor_block(const std::string& name, const CategoryDecl& src,
                               const CategoryDecl& dst, const std::vector<int>& obj_map,
                               const std::vector<int>& arr_map) {
  std::ostringstream os;
  os << "functor " << name << ": " << src.name << " -> " << dst.name << " {\n";
  for (int o = 0; o < src.cat.n_objects; ++o)
    os << "  object " << src.obj_names[o] << " |-> " << dst.obj_names[obj_map[o]] << ";\n";
  for (ArrowId a = src.cat.n_objects; a < src.cat.n_arrows(); ++a)
    os << "  arrow " << src.arrow_names[a] << " |-> " << dst.arrow_names[arr_map[a]]
       << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace fibcat::dsl
