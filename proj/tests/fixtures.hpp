#ifndef MLTC_TESTS_FIXTURES_HPP
#define MLTC_TESTS_FIXTURES_HPP

#include "mltc/presentation.hpp"

namespace fixtures {

// two objects with arrows back and forth
inline const char* kF1 = R"(# round trip of two objects
dim 0: a b
dim 1: x : a -> b
       y : b -> a
)";

// three parallel arrow families and four 2-cells
inline const char* kF2 = R"(dim 0: a b c
dim 1: f1 : a -> b
       f2 : a -> b
       f3 : a -> b
       g1 : b -> c
       g2 : b -> c
       g3 : b -> c
dim 2: X : f2 => f1
       X1 : f3 => f2
       Y : g2 => g1
       Y1 : g3 => g2
)";

// a three-dimensional tower over the F1 shape
inline const char* kF3 = R"(dim 0: a b
dim 1: x : a -> b
       y : b -> a
dim 2: U : (x o[0] (y o[0] x)) => x
       V : x => x
       W : y => y
dim 3: T : (U o[0] V) => U
       S : V => V
)";

inline mltc::Presentation f1() { return mltc::parse_presentation(kF1, "f1"); }
inline mltc::Presentation f2() { return mltc::parse_presentation(kF2, "f2"); }
inline mltc::Presentation f3() { return mltc::parse_presentation(kF3, "f3"); }

}  // namespace fixtures

#endif
