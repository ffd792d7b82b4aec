// Walkthrough: evaluate Fitzpatrick functions at a few instructive points.

#include <monorel/fitzpatrick.hpp>
#include <monorel/gallery.hpp>
#include <monorel/relation.hpp>

#include <iostream>
#include <string>

namespace {

void show(const std::string& label, const monorel::FitzValue& v) {
  std::cout << label << " = ";
  if (v.is_finite())
    std::cout << v.value() << "\n";
  else
    std::cout << "inf\n";
}

}  // namespace

int main() {
  using namespace monorel;

  const LinearRelation id = LinearRelation::identity(2);
  Vector x(2), xstar(2);

  // on the graph of a maximal monotone operator the Fitzpatrick function
  // equals the inner product <x, x*>
  x << 1, 0;
  xstar << 1, 0;
  show("F_Id((1,0),(1,0))", fitzpatrick_value(id, x, xstar));

  // off the graph it is strictly larger: F_Id(x,x*) = |x + x*|^2 / 4
  xstar << 0, 1;
  show("F_Id((1,0),(0,1))", fitzpatrick_value(id, x, xstar));

  // for the rotation, the domain of F is only the diagonal-like slice
  // {(x, -Ax)}; everywhere else the supremum is infinite
  const LinearRelation rot = LinearRelation::from_matrix(rotation());
  xstar << 0, 0;
  show("F_rot((1,0),(0,0))", fitzpatrick_value(rot, x, xstar));
  xstar << 0, -1;  // = -A x: inside the slice
  show("F_rot((1,0),(0,-1))", fitzpatrick_value(rot, x, xstar));

  // the ball-constrained rotation has a finite closed form on dom x R^2
  const BallConstrainedOperator ball(rotation());
  x << 0.5, 0.0;
  xstar << 3, 4;
  show("F_ball((0.5,0),(3,4))", ball_fitzpatrick(ball, x, xstar));

  return 0;
}
