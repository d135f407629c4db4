#pragma once

// Text format for categories, functors, finite maps, families, relations,
// comorphisms, vector bundles and glue data. Line-oriented with '#' comments.
// Identities are implicit: every object o gets an arrow named id_<o>, and the
// arrow names declared in a category block start after the identities, in
// declaration order, so a document parses to index tables bit-identically
// with the in-code fixtures.

#include <memory>
#include <optional>
#include <string>

#include "fibcat/glue.hpp"
#include "fibcat/jets.hpp"
#include "fibcat/vect.hpp"

namespace fibcat::dsl {

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  int line = 0;
  int column = 0;
  std::string message;
  std::string suggestion;
};

struct CategoryDecl {
  std::string name;
  FiniteCategory cat;
  std::vector<std::string> obj_names;
  std::vector<std::string> arrow_names;  // identities first, as id_<obj>
  std::map<std::string, int> obj_index;
  std::map<std::string, int> arrow_index;
};

struct FunctorDecl {
  std::string name;
  std::string source, target;
  CatFunctor fun;  // points into the owning Document's categories
};

struct FinMapDecl {
  std::string name;
  FinFunction fn;
};

struct FamilyDecl {
  std::string name;
  FinFamilyBundle bundle;
};

struct RelationDecl {
  std::string name;
  NeighborhoodRelation rel;
};

struct ComorphismDecl {
  std::string name;
  std::string over, from, to;
  FamilyComorphism com;
};

struct VectBundleDecl {
  std::string name;
  FinVectorBundle bundle;
};

struct GlueDataDecl {
  std::string name;
  std::string fibration, target, target_projection;  // projection may be empty
  GlueData data;  // points into the owning Document
};

// A parsed, resolved and validated document. Categories and glue blocks are
// heap-held so cross references stay valid when the Document moves.
struct Document {
  std::vector<std::unique_ptr<CategoryDecl>> categories;
  std::vector<std::unique_ptr<FunctorDecl>> functors;
  std::vector<FinMapDecl> finmaps;
  std::vector<FamilyDecl> families;
  std::vector<RelationDecl> relations;
  std::vector<ComorphismDecl> comorphisms;
  std::vector<VectBundleDecl> vectbundles;
  std::vector<std::unique_ptr<GlueDataDecl>> gluedata;

  const CategoryDecl* category(const std::string& name) const;
  const FunctorDecl* functor_decl(const std::string& name) const;
  const FinMapDecl* finmap(const std::string& name) const;
  const FamilyDecl* family(const std::string& name) const;
  const RelationDecl* relation(const std::string& name) const;
  const ComorphismDecl* comorphism(const std::string& name) const;
  const VectBundleDecl* vectbundle(const std::string& name) const;
  const GlueDataDecl* gluedata_decl(const std::string& name) const;
};

struct ParseResult {
  std::optional<Document> doc;  // present iff no error-severity diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return doc.has_value(); }
};

ParseResult parse_document(const std::string& text);

// Canonical form: declarations sorted by kind then name, normalized
// whitespace, relations with their full reflexive closure spelled out.
// parse(emit(parse(t))) equals parse(t) structurally.
std::string emit_document(const Document& doc);

// Helpers for commands that synthesize documents: wrap a bare category in a
// declaration record with generated object names o<i> and arrow names c<i>.
// Arrows are renumbered so identities come first (the parser's convention);
// arrow_to_decl maps original arrow indices to declaration indices.
struct CategoryReindex {
  std::unique_ptr<CategoryDecl> decl;
  std::vector<int> arrow_to_decl;
};

CategoryReindex decl_from_category(const std::string& name, const FiniteCategory& cat,
                                   const std::vector<std::string>* obj_names = nullptr);

// Emit one functor block given maps in declaration indices.
std::string emit_functor_block(const std::string& name, const CategoryDecl& src,
                               const CategoryDecl& dst, const std::vector<int>& obj_map,
                               const std::vector<int>& arr_map);

}  // namespace fibcat::dsl
