// Build: g++ -std=c++20 -O2 -Iinclude -I/usr/include/eigen3 usage/library.cpp -o /tmp/library
#include <iostream>

#include <plimit/biject.hpp>
#include <plimit/enumerate.hpp>
#include <plimit/sampler.hpp>
#include <plimit/shape.hpp>

using namespace plimit;

int main() {
  // exact counts
  const auto convex = parse_class("convex:2");
  std::cout << "convex(30) = " << count(convex, 30) << "\n";
  std::cout << "triangular parts(30) = " << count(ClassSpec::parts_in(PartSizeSet::triangular()), 30) << "\n";

  // a bijection and its inverse
  const auto p = parse_partition("7,4,2,1");
  const auto q = glaisher(p);
  std::cout << to_string(p) << " -> " << to_string(q) << " -> " << to_string(glaisher_inv(q)) << "\n";

  // one exact sample at n = 1000, compared with the limit shape at a few points
  SamplerConfig cfg;
  cfg.cls = ClassSpec::distinct();
  cfg.n = 1000;
  cfg.mode = SampleMode::Pdc;
  const auto draw = sample_many(cfg, 1).front();
  const std::vector<double> grid{0.25, 0.5, 1, 2};
  const auto y = scaled_diagram(draw.partition, 1000, std::sqrt(1000.0), grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    std::cout << "t=" << grid[i] << " sample " << y[i] << " limit " << Psi(grid[i]) << "\n";

  // stability of the convex map's row functional
  const auto rep = check_stability(rthdiff_spec(2), {1e4, 1e6}, {0.5, 1.0});
  std::cout << "stability deviations: " << rep.max_deviation(0) << " -> " << rep.max_deviation(1) << "\n";
}
