#include "helpers.hpp"

#include <doctest.h>

using namespace mdgm;
using namespace testing;

TEST_CASE("lattice edge counts and degrees") {
  const Nug first = lattice(3, 3);
  CHECK(first.edge_count() == 12);
  CHECK(first.degree(4) == 4);
  CHECK(first.degree(0) == 2);

  const Nug second = lattice(3, 3, true);
  CHECK(second.edge_count() == 20);
  CHECK(second.degree(4) == 8);
  CHECK(second.weight(4, 0) == 2);
  CHECK(second.weight(4, 1) == 1);

  CHECK(lattice(1, 1).edge_count() == 0);
  CHECK(lattice(16, 16, true).edge_count() == 930);
  CHECK(lattice(16, 16, true).max_degree() == 8);
}

TEST_CASE("edge list parsing") {
  const Nug p = parse("0,1\n1,2\n");
  CHECK(p.size() == 3);
  CHECK(p.edge_count() == 2);
  CHECK(p.has_edge(2, 1));
  CHECK_FALSE(p.has_edge(0, 2));

  CHECK(parse("# comment\n0,1,2\n").weight(0, 1) == 2);
  CHECK_THROWS_AS(parse("0,0\n"), GraphError);
  CHECK_THROWS_AS(parse("0,1,3\n"), GraphError);
  CHECK_THROWS_AS(parse("0,x\n"), GraphError);
  CHECK_THROWS_AS(parse("0\n"), GraphError);

  try {
    parse("0,1\n1,2\n1,0\n");
    FAIL("duplicate accepted");
  } catch (const GraphError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("line 1") != std::string::npos);
  }

  std::istringstream in("0,1\n1,5\n");
  CHECK_THROWS_AS(parse_nug(in, 4), GraphError);
}

TEST_CASE("write and parse round trip keeps isolated vertices") {
  const Nug g = Nug::from_edges(5, {{0, 1, 1}, {1, 2, 2}});
  std::ostringstream out;
  write_nug(out, g);
  const Nug back = parse(out.str());
  CHECK(back.size() == 5);
  CHECK(back.edge_count() == 2);
  CHECK(back.weight(1, 2) == 2);
}

TEST_CASE("from_edges validation") {
  CHECK_THROWS_AS(Nug::from_edges(2, {{0, 2, 1}}), GraphError);
  CHECK_THROWS_AS(Nug::from_edges(2, {{1, 1, 1}}), GraphError);
  CHECK_THROWS_AS(Nug::from_edges(2, {{0, 1, 1}, {1, 0, 1}}), GraphError);
  CHECK_THROWS_AS(Nug::from_edges(2, {{0, 1, 0}}), GraphError);
}

TEST_CASE("laplacian and association matrix") {
  const Nug single = edges(2, {{0, 1}});
  CHECK(laplacian(single) == IntMatrix{{1, -1}, {-1, 1}});

  const auto l = laplacian(cycle(4));
  for (int i = 0; i < 4; ++i) CHECK(l[i][i] == 2);
  CHECK(l[0][1] == -1);
  CHECK(l[0][3] == -1);
  CHECK(l[0][2] == 0);

  const auto a = association_matrix(lattice(2, 2, true));
  CHECK(a[0][3] == 1);  // unweighted even for corner contact
}

TEST_CASE("connectivity") {
  CHECK(is_connected(path(3)));
  CHECK_FALSE(is_connected(Nug::from_edges(2, {})));
  CHECK(is_connected(lattice(16, 16, true)));
}

TEST_CASE("ELL table pads with the sentinel") {
  const Nug g = path(3);
  const EllTable& t = g.ell();
  CHECK(t.rows == 3);
  CHECK(t.width == 2);
  // column 1 of vertex 0 is padding
  CHECK(t.index[1 * t.rows + 0] == 3);
}
