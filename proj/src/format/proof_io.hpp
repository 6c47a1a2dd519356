#pragma once

#include <set>
#include <string>
#include <vector>

#include "format/formula_io.hpp"
#include "reasoner/reasoner.hpp"

#include <json.hpp>

namespace sk {

// Line-oriented proof graph, header "shadowkernel-proof v1".  Every payload
// line is "<head tokens> :: <payload to end of line>"; payloads are formula
// or clause renderings.  Nodes number the assumption list first, then each
// expansion conclusion in application order; fol steps use their own index
// space.  Closure steps carry their embedded entailment as a nested block
// between "sub" and "end".  Emission is deterministic, so equal proofs
// produce byte-equal files.
std::string writeProof(const MixedProof& p, const Signature& sig);

// Inverse of writeProof over the same signature.  Shadowed formulas are
// recomputed from the recorded atom table; all content is re-validated by
// checkMixedProof afterwards, the reader only enforces structure.  Returns
// a default proof and appends diagnostics on malformed input.
MixedProof readProofText(const std::string& text, Signature& sig,
                         std::vector<Diagnostic>& diags);
MixedProof readProofFile(const std::string& path, Signature& sig,
                         std::vector<Diagnostic>& diags);

// The same graph as structured data for tooling.
nlohmann::json proofJson(const MixedProof& p, const Signature& sig);

// One clause in renderClause() notation, sorts reconstructed from the
// signature's tables.  Empty clause spelled "[]".
bool parseClauseText(const std::string& text, const Signature& sig, Clause& out,
                     std::string& error);

// Assumption labels the refutation actually rests on: the union of the
// first-order steps' support sets, with expansion conclusions traced back
// to their premises.  Intended for proofs that already passed the checker;
// throws std::invalid_argument on proofs with dangling references.
std::set<std::string> proofSupport(const MixedProof& p, const Signature& sig);

}  // namespace sk
