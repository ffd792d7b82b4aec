// Walkthrough: build a few operators, classify them, and print the reports.

#include <monorel/classify.hpp>
#include <monorel/gallery.hpp>
#include <monorel/relation.hpp>

#include <iostream>
#include <string>

namespace {

std::string flag(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "-"; }

void show(const std::string& label, const monorel::ClassificationReport& r) {
  std::cout << label << "\n"
            << "  monotone           " << (r.monotone ? "yes" : "no") << "\n"
            << "  maximal            " << flag(r.maximal) << "\n"
            << "  strictly monotone  " << flag(r.strictly_monotone) << "\n"
            << "  paramonotone       " << flag(r.paramonotone) << "\n"
            << "  rectangular        " << flag(r.rectangular) << "\n";
  if (r.cocoercivity_modulus) {
    std::cout << "  cocoercivity beta  ";
    if (r.cocoercivity_modulus->is_finite())
      std::cout << r.cocoercivity_modulus->value() << "\n";
    else
      std::cout << "inf\n";
  }
  for (const auto& [name, pair] : r.witnesses)
    std::cout << "  witness (" << name << ")  x = [" << pair.first.transpose() << "], x* = ["
              << pair.second.transpose() << "]\n";
  std::cout << "\n";
}

}  // namespace

int main() {
  using namespace monorel;

  show("identity on R^2", classification_report(LinearRelation::identity(2)));
  show("rotation by -90 degrees",
       classification_report(LinearRelation::from_matrix(rotation())));
  show("cumulative-integration matrix V_8",
       classification_report(LinearRelation::from_matrix(volterra(8))));
  show("diagonal decay + block rotation C_2",
       classification_report(LinearRelation::from_matrix(shift_sum(2))));

  // a genuinely multivalued relation: the normal-cone map of the x-axis,
  // x |-> {0} x R on the axis, given by the graph span {(e1, 0), (0, e2*)}
  Matrix graph(4, 2);
  graph << 1, 0, 0, 0, 0, 0, 0, 1;
  show("normal cone of the x-axis in R^2",
       classification_report(LinearRelation::from_graph_span(2, graph)));

  return 0;
}
