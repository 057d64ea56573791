#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hc::test {

struct PrecedenceRow {
  std::string text;
  double x, y;
  double value;  // hand-computed, exactly representable
};

inline const std::vector<PrecedenceRow>& precedence_corpus() {
  static const std::vector<PrecedenceRow> rows{
      {"2+3*4", 0, 0, 14},
      {"(2+3)*4", 0, 0, 20},
      {"2*3+4", 0, 0, 10},
      {"10-4-3", 0, 0, 3},
      {"10-(4-3)", 0, 0, 9},
      {"64/8/2", 0, 0, 4},
      {"64/(8/2)", 0, 0, 16},
      {"2*3^2", 0, 0, 18},
      {"(2*3)^2", 0, 0, 36},
      {"-2^2", 0, 0, -4},
      {"(-2)^2", 0, 0, 4},
      {"--3", 0, 0, 3},
      {"2*-3", 0, 0, -6},
      {"1 - -1", 0, 0, 2},
      {"x+y*2", 1, 3, 7},
      {"x-y-x", 5, 2, -2},
      {"x/y*2", 6, 3, 4},
      {"x^3-y^2", 2, 3, -1},
      {"min(x,y)+max(x,y)", 3, 8, 11},
      {"abs(x-y)*2", 1, 4, 6},
      {"sqrt(x*x+y*y)", 3, 4, 5},
      {"2^0+x^1", 7, 0, 8},
      {"max(-x, y)^2", 3, 1, 1},
      {"  ( x )+( ( y ) ) ", 0.5, 0.25, 0.75},
      {"1.5e1 + .5", 0, 0, 15.5},
      {"abs(-x)", 2.5, 0, 2.5},
  };
  return rows;
}

struct MalformedRow {
  std::string text;
  std::size_t position;
};

inline const std::vector<MalformedRow>& malformed_corpus() {
  static const std::vector<MalformedRow> rows{
      {"x +", 3},          // end of input
      {"", 0},             // empty
      {"2x", 1},           // no implicit multiplication
      {"(x+1", 4},         // unbalanced
      {"x+1)", 3},         // trailing input
      {"foo(x)", 0},       // unknown identifier
      {"z", 0},            // unknown identifier
      {"sin(x, y)", 5},    // arity
      {"min(x)", 5},       // arity
      {"x^2.5", 2},        // non-integer exponent
      {"x^-1", 2},         // negative exponent
      {"x^y", 2},          // non-literal exponent
      {"x^2^3", 3},        // chained exponent
      {"sin x", 4},        // missing parenthesis
      {"3 * * 4", 4},      // unexpected operator
      {"1e", 2},           // malformed number
      {"x # y", 2},        // bad character
      {"max(x,)", 6},      // missing argument
  };
  return rows;
}

// Round-trip corpus: every precedence row plus a few deeper trees.
inline std::vector<std::string> roundtrip_corpus() {
  std::vector<std::string> out;
  for (const auto& row : precedence_corpus()) out.push_back(row.text);
  for (const char* extra : {"abs(x-0.5)+abs(y-0.5)", "sin(5*x)*sin(5*y)", "-(x+y)^3", "(x^2)^3", "x-(y-(x-y))",
                            "x/(y/(x/y))", "-x*-y", "exp(-x^2-y^2)/(1+sqrt(x^2+y^2))", "0.1+0.2",
                            "1e-300*x+1.7976931348623157e308*0", "min(max(x,y),-min(y,x))", "x^0"}) {
    out.emplace_back(extra);
  }
  return out;
}

}  // namespace hc::test
