// Frozen standard generators of the Mathieu groups, derived once by the
#include <sstream>
// facta-discover tool (golay subcommand) from the extended quadratic-residue
// code of length 24: M24 is generated inside Sym(24) by the projective
// maps x -> x+1 and x -> -1/x on the line over GF(23) together with a third
// code-preserving map found by scanning monomial candidates; the smaller
// Mathieu groups are cut out along the stabilizer chain (M23, M22) and a
// dodecad stabilizer (M12, M11) and re-expressed on their natural points.
// Every entry is re-certified in atlas::build by order and transitivity.
#include "facta/atlas.hpp"

namespace facta::atlas {

namespace {

struct MathieuEntry {
  uint32_t degree;
  const char* gens;  // ';'-separated cycle strings, 1-indexed
};

// Placeholders are rejected at certification until the discover tool has
// produced the frozen strings below.
const MathieuEntry kMathieu[] = {
    {11, "(3 4 5)(6 8 7)(9 10 11);(1 2)(6 9)(7 11)(8 10);(3 7 8 5)(4 10 6 9);(4 8 5 11)(6 10 9 7);(4 7 5 10)(6 8 9 11);(2 3)(4 7)(5 10)(6 9);(2 11 5 10)(6 9 7 8);(2 6 5 7)(8 10 9 11)"},
    {12, "(5 6)(7 10)(8 11)(9 12);(5 7 6 10)(8 12 11 9);(5 8 6 11)(7 9 10 12);(4 5)(7 11)(8 12)(9 10);(3 4)(7 9)(8 11)(10 12);(2 3)(7 10)(8 12)(9 11);(1 2)(7 12)(8 11)(9 10)"},
    {22, "(2 8 6 9 16)(3 4 18 13 12)(5 20 15 11 17)(7 19 10 22 21);(1 20 2 17 21)(3 9 19 14 7)(4 8 5 22 6)(11 12 16 15 13);(1 13 6 3 8)(4 18 16 9 12)(7 10 22 17 11)(14 21 15 19 20);(1 5 3 17 18)(4 10 11 19 15)(6 16 14 8 9)(7 21 12 20 13);(3 4 21 6)(5 17 10 7)(8 20)(9 18 12 19)(11 22)(13 15 14 16);(3 13 16)(4 19 6)(5 9 14)(7 15 12)(8 11 22)(10 21 17);(4 11)(5 14)(6 22)(7 15)(8 19)(10 17)(13 16)(18 20);(4 19 18)(5 8 13)(7 15 22)(9 21 12)(10 20 14)(11 17 16);(5 11 14)(6 18 19)(7 16 8)(9 21 12)(10 22 13)(15 20 17)"},
    {23, "(3 9 7 10 17)(4 5 19 14 13)(6 21 16 12 18)(8 20 11 23 22);(1 2 3 10 18 7 11)(4 6 22 9 8 21 17)(5 20 12 19 15 16 13);(2 21 3 18 22)(4 10 20 15 8)(5 9 6 23 7)(12 13 17 16 14);(2 14 7 4 9)(5 19 17 10 13)(8 11 23 18 12)(15 22 16 20 21);(2 6 4 18 19)(5 11 12 20 16)(7 17 15 9 10)(8 22 13 21 14);(4 5 22 7)(6 18 11 8)(9 21)(10 19 13 20)(12 23)(14 16 15 17);(4 14 17)(5 20 7)(6 10 15)(8 16 13)(9 12 23)(11 22 18);(5 12)(6 15)(7 23)(8 16)(9 20)(11 18)(14 17)(19 21);(5 20 19)(6 9 14)(8 16 23)(10 22 13)(11 21 15)(12 18 17);(6 12 15)(7 19 20)(8 17 9)(10 22 13)(11 23 14)(16 21 18)"},
    {24, "(2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23 24);(1 2)(3 24)(4 13)(5 17)(6 19)(7 11)(8 21)(9 15)(10 22)(12 18)(14 23)(16 20);(4 10 8 11 18)(5 6 20 15 14)(7 22 17 13 19)(9 21 12 24 23)"},
};

}  // namespace

std::vector<perm::Permutation> mathieu_generators(uint32_t n) {
  for (const auto& e : kMathieu) {
    if (e.degree != n) continue;
    std::string all(e.gens);
    if (all.empty())
      throw integrity_error("mathieu_generators: no frozen data for degree " +
                            std::to_string(n));
    std::vector<perm::Permutation> gens;
    std::string cur;
    std::istringstream is(all);
    while (std::getline(is, cur, ';'))
      gens.push_back(perm::Permutation::parse_cycles(n, cur));
    return gens;
  }
  throw argument_error("mathieu_generators: degree must be 11, 12, 22, 23 or 24");
}

}  // namespace facta::atlas
