// Copyright 2026 The privcontract Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privcontract/config.hpp"

#include <gtest/gtest.h>

#include <string>

#include "privcontract/errors.hpp"

namespace privcontract {
namespace {

const char* kBase = R"(# comment line
[types]
theta_low = 1
theta_high = 2   ; trailing comment
prior_high = 0.25

[interval]
x_min = 0
x_max = 1

[cost]
kind = quadratic
zeta = 3
)";

ParseError ParseFailure(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ParseError";
  return ParseError("none");
}

TEST(ParseConfigTest, MinimalDefaults) {
  const RunConfig c = parse_config(kBase);
  EXPECT_EQ(c.model.types.theta_low, 1.0);
  EXPECT_EQ(c.model.types.theta_high, 2.0);
  EXPECT_EQ(c.model.prior(), 0.25);
  EXPECT_EQ(c.model.cost.zeta(), 3.0);
  EXPECT_EQ(c.model.utility.kind(), UtilityModel::Kind::LinearInType);
  EXPECT_EQ(c.model.risk.kind(), RiskModel::Kind::None);
  EXPECT_FALSE(c.run.grid.has_value());
  EXPECT_EQ(c.run.oracle_steps, 2001);
  EXPECT_EQ(c.run.jobs, 1);
  EXPECT_EQ(c.run.solver.tol, 1e-10);
  EXPECT_EQ(c.run.solver.feas_tol, 1e-8);
}

TEST(ParseConfigTest, RiskAndRunSections) {
  const std::string text = std::string(kBase) + R"(
[risk]
kind = linear_breach
m = 0.5
loss_low = 0.2
loss_high = 0.6

[run]
tol = 1e-9
feas_tol = 1e-7
grid = 0.01, 0.99, 99
oracle_steps = 501
jobs = 0
validation_grid = 65
)";
  const RunConfig c = parse_config(text);
  EXPECT_EQ(c.model.risk.kind(), RiskModel::Kind::LinearBreach);
  EXPECT_EQ(c.model.risk.m(), 0.5);
  EXPECT_EQ(c.model.risk.loss_high(), 0.6);
  ASSERT_TRUE(c.run.grid.has_value());
  EXPECT_EQ(c.run.grid->p_min, 0.01);
  EXPECT_EQ(c.run.grid->n, 99);
  EXPECT_EQ(c.run.solver.tol, 1e-9);
  EXPECT_EQ(c.run.solver.feas_tol, 1e-7);
  EXPECT_EQ(c.run.oracle_steps, 501);
  EXPECT_EQ(c.run.jobs, 0);
  EXPECT_EQ(c.run.solver.validation.grid_points, 65);
}

TEST(ParseConfigTest, UnknownKeyReportsLineAndField) {
  const std::string text = std::string(kBase) + "zeta2 = 4\n";
  const ParseError e = ParseFailure(text);
  EXPECT_EQ(e.line(), 14);
  EXPECT_EQ(e.field(), "cost.zeta2");
}

TEST(ParseConfigTest, UnknownSection) {
  const ParseError e = ParseFailure(std::string(kBase) + "[extra]\n");
  EXPECT_EQ(e.line(), 14);
  EXPECT_EQ(e.field(), "extra");
}

TEST(ParseConfigTest, DuplicateKeyAndSection) {
  EXPECT_EQ(ParseFailure(std::string(kBase) + "zeta = 4\n").field(),
            "cost.zeta");
  EXPECT_EQ(ParseFailure(std::string(kBase) + "[cost]\n").field(), "cost");
}

TEST(ParseConfigTest, MissingRequiredKey) {
  const ParseError e = ParseFailure(
      "[types]\ntheta_low = 1\ntheta_high = 2\n[interval]\nx_min = 0\n"
      "x_max = 1\n[cost]\nzeta = 3\n");
  EXPECT_EQ(e.field(), "types.prior_high");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(ParseFailure("[types]\n").field(), "types.theta_low");
}

TEST(ParseConfigTest, MissingSection) {
  const ParseError e = ParseFailure(
      "[types]\ntheta_low = 1\ntheta_high = 2\nprior_high = .5\n[cost]\n"
      "zeta = 3\n");
  EXPECT_EQ(e.field(), "interval");
}

TEST(ParseConfigTest, BadNumbers) {
  std::string text = kBase;
  text.replace(text.find("zeta = 3"), 8, "zeta = 3x");
  const ParseError e = ParseFailure(text);
  EXPECT_EQ(e.field(), "cost.zeta");
  EXPECT_EQ(e.line(), 13);
  text = kBase;
  text.replace(text.find("zeta = 3"), 8, "zeta = inf");
  EXPECT_EQ(ParseFailure(text).field(), "cost.zeta");
  text = kBase;
  text.replace(text.find("zeta = 3"), 8, "zeta =");
  EXPECT_EQ(ParseFailure(text).field(), "cost.zeta");
}

TEST(ParseConfigTest, UnsupportedKinds) {
  std::string text = kBase;
  text.replace(text.find("kind = quadratic"), 16, "kind = custom");
  const ParseError e = ParseFailure(text);
  EXPECT_EQ(e.field(), "cost.kind");
  EXPECT_NE(std::string(e.what()).find("custom"), std::string::npos);
  EXPECT_EQ(ParseFailure(std::string(kBase) + "[utility]\nkind = log\n").field(),
            "utility.kind");
  EXPECT_EQ(ParseFailure(std::string(kBase) + "[risk]\nkind = custom\n").field(),
            "risk.kind");
}

TEST(ParseConfigTest, RiskNoneForbidsParameters) {
  const ParseError e =
      ParseFailure(std::string(kBase) + "[risk]\nkind = none\nm = 0.5\n");
  EXPECT_EQ(e.field(), "risk.m");
  EXPECT_EQ(e.line(), 16);
}

TEST(ParseConfigTest, LinearBreachNeedsParameters) {
  EXPECT_EQ(
      ParseFailure(std::string(kBase) + "[risk]\nkind = linear_breach\nm = 1\n")
          .field(),
      "risk.loss_low");
}

TEST(ParseConfigTest, RunValueChecks) {
  const std::string base = std::string(kBase) + "[run]\n";
  EXPECT_EQ(ParseFailure(base + "tol = 0\n").field(), "run.tol");
  EXPECT_EQ(ParseFailure(base + "feas_tol = -1\n").field(), "run.feas_tol");
  EXPECT_EQ(ParseFailure(base + "oracle_steps = 1\n").field(),
            "run.oracle_steps");
  EXPECT_EQ(ParseFailure(base + "jobs = -2\n").field(), "run.jobs");
  EXPECT_EQ(ParseFailure(base + "jobs = 1.5\n").field(), "run.jobs");
  EXPECT_EQ(ParseFailure(base + "validation_grid = 2\n").field(),
            "run.validation_grid");
  const ParseError g = ParseFailure(base + "grid = 0.1,0.9\n");
  EXPECT_EQ(g.field(), "run.grid");
  EXPECT_EQ(g.line(), 15);
}

TEST(ParseConfigTest, SyntaxErrors) {
  EXPECT_EQ(ParseFailure("[types\n").line(), 1);
  EXPECT_EQ(ParseFailure("theta_low = 1\n").line(), 1);
  EXPECT_EQ(ParseFailure("[types]\ntheta_low 1\n").line(), 2);
}

TEST(ParseConfigTest, ParsingDoesNotValidateModel) {
  std::string text = kBase;
  text.replace(text.find("theta_low = 1"), 13, "theta_low = 3");
  const RunConfig c = parse_config(text);
  EXPECT_EQ(c.model.types.theta_low, 3.0);
  EXPECT_FALSE(validate(c.model).valid());
}

TEST(ParseGridSpecTest, Valid) {
  const GridSpec g = parse_grid_spec("0.05,0.95,19");
  EXPECT_EQ(g.p_min, 0.05);
  EXPECT_EQ(g.p_max, 0.95);
  EXPECT_EQ(g.n, 19);
}

TEST(ParseGridSpecTest, Invalid) {
  EXPECT_THROW(parse_grid_spec("0.1,0.9"), ParseError);
  EXPECT_THROW(parse_grid_spec("0.1,0.9,1"), ParseError);
  EXPECT_THROW(parse_grid_spec("0.1,0.9,x"), ParseError);
  EXPECT_THROW(parse_grid_spec("a,0.9,5"), ParseError);
  EXPECT_THROW(parse_grid_spec("0.1,0.9,5,6"), ParseError);
}

TEST(LoadConfigTest, MissingFileIsIoError) {
  EXPECT_THROW(load_config("/nonexistent/privcontract.ini"), IoError);
}

TEST(LoadConfigTest, ShippedConfigs) {
  const RunConfig c = load_config(PRIVCONTRACT_SOURCE_DIR "/configs/dlc_risk.ini");
  EXPECT_TRUE(validate(c.model).valid());
  EXPECT_EQ(c.model.risk.kind(), RiskModel::Kind::LinearBreach);
  const RunConfig r =
      load_config(PRIVCONTRACT_SOURCE_DIR "/tests/data/reference.ini");
  EXPECT_EQ(r.model.risk.loss_low(), r.model.risk.loss_high());
}

}  // namespace
}  // namespace privcontract
