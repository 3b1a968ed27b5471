#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sticc/dataset.hpp"
#include "sticc/synthgen.hpp"

using namespace sticc;

namespace {

GeoDataset line_points(const std::vector<double>& xs, int dim = 1) {
  GeoDataset ds;
  ds.dim_attributes = dim;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    PointRecord p;
    p.id = static_cast<int>(i);
    p.coord = {xs[i], 0.0};
    p.attrs = Eigen::VectorXd::Constant(dim, static_cast<double>(i));
    ds.points.push_back(std::move(p));
  }
  return ds;
}

}  // namespace

TEST_CASE("load_csv parses a small file") {
  const auto dir = testutil::temp_dir("load");
  const auto path = dir + "/points.csv";
  testutil::write_file(path,
                       "id,x,y,a,b\n"
                       "0,1.5,2.5,10,20\n"
                       "1,3,4,30,40\n"
                       "2,-1,0,50,60\n");
  const GeoDataset ds = load_csv(path);
  REQUIRE(ds.count() == 3);
  REQUIRE(ds.dim_attributes == 2);
  REQUIRE(ds.points[0].coord[0] == 1.5);
  REQUIRE(ds.points[2].attrs[1] == 60.0);
  // Row order preserved as written.
  REQUIRE(ds.points[1].id == 1);
}

TEST_CASE("load_csv honors a column spec and ignores order") {
  const auto dir = testutil::temp_dir("load");
  const auto path = dir + "/points.csv";
  testutil::write_file(path,
                       "b,id,y,x,a\n"
                       "20,0,2.5,1.5,10\n");
  ColumnSpec spec;
  spec.attribute_columns = {"a", "b"};
  const GeoDataset ds = load_csv(path, spec);
  REQUIRE(ds.dim_attributes == 2);
  REQUIRE(ds.points[0].attrs[0] == 10.0);
  REQUIRE(ds.points[0].attrs[1] == 20.0);
  REQUIRE(ds.points[0].coord[0] == 1.5);
}

TEST_CASE("load_csv error paths") {
  const auto dir = testutil::temp_dir("load_err");
  const auto nan_path = dir + "/nan.csv";
  testutil::write_file(nan_path, "id,x,y,a\n0,1,2,nan\n");
  REQUIRE_THROWS_AS(load_csv(nan_path), ParseError);

  const auto missing_path = dir + "/missing.csv";
  testutil::write_file(missing_path, "id,x,a\n0,1,2\n");
  REQUIRE_THROWS_AS(load_csv(missing_path), SchemaError);

  const auto header_only = dir + "/header.csv";
  testutil::write_file(header_only, "id,x,y,a\n");
  REQUIRE_THROWS_AS(load_csv(header_only), EmptyInputError);

  const auto empty_path = dir + "/empty.csv";
  testutil::write_file(empty_path, "");
  REQUIRE_THROWS_AS(load_csv(empty_path), EmptyInputError);

  const auto text_path = dir + "/text.csv";
  testutil::write_file(text_path, "id,x,y,a\n0,1,2,hello\n");
  REQUIRE_THROWS_AS(load_csv(text_path), ParseError);

  const auto dup_path = dir + "/dup.csv";
  testutil::write_file(dup_path, "id,x,y,a\n0,1,2,3\n0,4,5,6\n");
  REQUIRE_THROWS_AS(load_csv(dup_path), ParseError);

  const auto gap_path = dir + "/gap.csv";
  testutil::write_file(gap_path, "id,x,y,a\n0,1,2,3\n5,4,5,6\n");
  REQUIRE_THROWS_AS(load_csv(gap_path), ParseError);

  const auto short_path = dir + "/short.csv";
  testutil::write_file(short_path, "id,x,y,a\n0,1,2\n");
  REQUIRE_THROWS_AS(load_csv(short_path), ParseError);
}

TEST_CASE("synthetic benchmark round-trips through save and load") {
  const auto data = generate(default_layout(), default_attributes(), 11);
  const auto dir = testutil::temp_dir("roundtrip");
  const auto path = dir + "/points.csv";
  save_csv(data.dataset, path, {"a", "b", "c", "d", "e"});
  const GeoDataset back = load_csv(path);
  REQUIRE(back == data.dataset);
}

TEST_CASE("knn on collinear points") {
  const GeoDataset ds = line_points({0.0, 1.0, 3.0});
  const auto one = knn(ds, 1);
  REQUIRE(one[0] == std::vector<int>{1});
  REQUIRE(one[1] == std::vector<int>{0});
  REQUIRE(one[2] == std::vector<int>{1});

  const auto two = knn(ds, 2);
  REQUIRE(two[0] == std::vector<int>{1, 2});
  REQUIRE(two[2] == std::vector<int>{1, 0});
}

TEST_CASE("knn breaks distance ties by lower id") {
  const GeoDataset ds = line_points({0.0, 1.0, -1.0});
  const auto one = knn(ds, 1);
  REQUIRE(one[0] == std::vector<int>{1});  // ids 1 and 2 equidistant
}

TEST_CASE("knn matches the brute-force sort on random points") {
  std::mt19937_64 gen(404);
  const GeoDataset ds = testutil::random_dataset(200, 2, 3, gen);
  REQUIRE(knn(ds, 5) == oracle::knn_bruteforce(ds, 5));
  REQUIRE(knn(ds, 1) == oracle::knn_bruteforce(ds, 1));
}

TEST_CASE("knn ignores row order") {
  std::mt19937_64 gen(405);
  GeoDataset ds = testutil::random_dataset(40, 1, 2, gen);
  const auto expected = knn(ds, 3);
  std::reverse(ds.points.begin(), ds.points.end());
  REQUIRE(knn(ds, 3) == expected);
}

TEST_CASE("knn parameter validation") {
  const GeoDataset ds = line_points({0.0, 1.0, 3.0});
  REQUIRE_THROWS_AS(knn(ds, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(knn(ds, 3), std::invalid_argument);
}

TEST_CASE("radius-1 subregions reproduce the raw attributes") {
  std::mt19937_64 gen(7);
  const GeoDataset ds = testutil::random_dataset(20, 3, 2, gen);
  const SubregionSet subs = build_subregions(ds, 1);
  REQUIRE(subs.dim == 3);
  for (int i = 0; i < 20; ++i) REQUIRE(subs.stacked[i] == ds.points[i].attrs);
  // The nearest pointer is defined even at R=1.
  for (int i = 0; i < 20; ++i) REQUIRE(subs.nearest_subregion[i] != i);
}

TEST_CASE("stacked vectors are center then neighbors in distance order") {
  const GeoDataset ds = line_points({0.0, 1.0, 3.0, 7.0}, 2);
  const SubregionSet subs = build_subregions(ds, 3);
  REQUIRE(subs.stacked[0].size() == 6);
  // Point 0: neighbors 1 (d=1) then 2 (d=3).
  REQUIRE(subs.neighbor_lists[0] == std::vector<int>{1, 2});
  REQUIRE(subs.stacked[0].segment(0, 2) == ds.points[0].attrs);
  REQUIRE(subs.stacked[0].segment(2, 2) == ds.points[1].attrs);
  REQUIRE(subs.stacked[0].segment(4, 2) == ds.points[2].attrs);
  // Point 3: neighbors 2 (d=4) then 1 (d=6).
  REQUIRE(subs.neighbor_lists[3] == std::vector<int>{2, 1});
}

TEST_CASE("radius 3 with 5 attributes stacks to length 15") {
  const auto data = generate(default_layout(), default_attributes(), 2);
  const SubregionSet subs = build_subregions(data.dataset, 3);
  REQUIRE(subs.stacked[0].size() == 15);
  REQUIRE(subs.size() == data.dataset.count());
}

TEST_CASE("nearest-subregion pointers need not be symmetric") {
  // A at 0, B at 1, C at 1.9: A's nearest is B, but B's nearest is C.
  const GeoDataset ds = line_points({0.0, 1.0, 1.9});
  const SubregionSet subs = build_subregions(ds, 2);
  REQUIRE(subs.nearest_subregion[0] == 1);
  REQUIRE(subs.nearest_subregion[1] == 2);
  REQUIRE(subs.nearest_subregion[2] == 1);
}

TEST_CASE("subregion construction is deterministic") {
  std::mt19937_64 gen(12);
  const GeoDataset ds = testutil::random_dataset(30, 2, 2, gen);
  const SubregionSet a = build_subregions(ds, 3);
  const SubregionSet b = build_subregions(ds, 3);
  REQUIRE(a.stacked == b.stacked);
  REQUIRE(a.neighbor_lists == b.neighbor_lists);
  REQUIRE(a.nearest_subregion == b.nearest_subregion);
}

TEST_CASE("build_subregions parameter validation") {
  const GeoDataset ds = line_points({0.0, 1.0, 3.0});
  REQUIRE_THROWS_AS(build_subregions(ds, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(build_subregions(ds, 4), std::invalid_argument);
  const GeoDataset single = line_points({0.0});
  REQUIRE_THROWS_AS(build_subregions(single, 1), std::invalid_argument);
}
