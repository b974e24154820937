#pragma once
// The eight refinement operators. Each returns a new model with the output
// elements added and the application recorded; the input model is untouched.

#include "desiree/model.hpp"

#include <string>
#include <vector>

namespace desiree {

// Outputs may include DAs; every other output keeps the input's kind.
Model apply_reduce(const Model& m, const std::string& input, const std::vector<Element>& outputs,
                   Strength strength = Strength::Strengthening);

// Goal → any kind; otherwise same kind. Weakening is rejected.
Model apply_interpret(const Model& m, const std::string& input, const Element& output,
                      Strength strength = Strength::Equating);

// FG → F/FC/DA, QG → QC/F/FC/DA, CTG → SC/DA, Goal → DA.
// Assumption-only outputs always make a weakening.
Model apply_operationalize(const Model& m, const std::string& input, const std::vector<Element>& outputs,
                           Strength strength = Strength::Strengthening);

// One output per target; the target is joined to the subject (or the quality)
// with ∨ so that the input entails each output.
Model apply_focus(const Model& m, const std::string& input, const FocusArgs& args,
                  Strength strength = Strength::Weakening, std::vector<std::string> output_ids = {});

// Quantitative factors multiply the interval bounds. A qualifier renames a
// named region (Nearly + Fast → Nearly_fast) and needs an ordering axiom.
Model apply_scale(const Model& m, const std::string& input, const ScaleArgs& args, std::string output_id = {});

Model apply_deuniversalize(const Model& m, const std::string& input, const UAnnotation& u,
                           std::string output_id = {});

// Output is a QC carrying the extra observer.
Model apply_observe(const Model& m, const std::string& input, const Description& observer,
                    std::string output_id = {});

// `kept` lists surviving inputs; `added` are new (e.g. weakened) elements.
Model apply_resolve(const Model& m, const std::vector<std::string>& inputs, const std::vector<std::string>& kept,
                    const std::vector<Element>& added = {});

// Name produced by a qualitative scale: ("Nearly", "Fast") → "Nearly_fast".
std::string qualified_region_name(const std::string& qualifier, const std::string& region);

}  // namespace desiree
