#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jel/kb.hpp"
#include "jel/textio.hpp"

using namespace jel;

namespace {

std::filesystem::path temp_path(const std::string& stem) {
    return std::filesystem::temp_directory_path() / ("jel_kb_" + stem + ".tsv");
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("a three-record file loads into a three-entity catalog") {
    auto path = temp_path("three");
    write_file(path,
               "e1\tAcma Furniture\tfurniture maker\tretail\n"
               "e2\tLumier\tLED lighting\tenergy\n"
               "e3\tFrob Corp\t\t\n");
    auto kb = load_kb(path);
    CHECK(kb.size() == 3);
    for (const auto& id : {"e1", "e2", "e3"}) {
        const Entity* e = kb.find(id);
        REQUIRE(e != nullptr);
        CHECK(e->id == id);
    }
    CHECK(kb.find("e3")->description.empty());  // empty descriptions are legal
    CHECK(kb.find("e9") == nullptr);
    std::filesystem::remove(path);
}

TEST_CASE("two entities may carry the same display name") {
    KnowledgeBase kb;
    kb.add({"e1", "Lumier", "software maker", "software"});
    kb.add({"e2", "Lumier", "LED light maker", "energy"});
    CHECK(kb.size() == 2);
    CHECK(kb.ids_by_name("Lumier") == std::vector<std::string>{"e1", "e2"});
    CHECK(kb.ids_by_name("Acme").empty());
}

TEST_CASE("catalog rejects bad records by name") {
    KnowledgeBase kb;
    kb.add({"e1", "Acma", "", ""});
    CHECK_THROWS_WITH_AS(kb.add({"e1", "Other", "", ""}), "duplicate entity id: 'e1'",
                         std::invalid_argument);
    CHECK_THROWS_AS(kb.add({"", "NoId", "", ""}), std::invalid_argument);
    CHECK_THROWS_AS(kb.add({"e 2", "SpacedId", "", ""}), std::invalid_argument);
    CHECK_THROWS_AS(kb.add({"e2", "", "", ""}), std::invalid_argument);
    CHECK(kb.size() == 1);
}

TEST_CASE("lookup by row and by id agree") {
    KnowledgeBase kb;
    kb.add({"a", "Alpha", "", ""});
    kb.add({"b", "Beta", "", ""});
    CHECK(kb.at(1).id == "b");
    CHECK(kb.row_of("a") == std::size_t{0});
    CHECK_FALSE(kb.row_of("zz").has_value());
}

TEST_CASE("save then load preserves every field and byte") {
    KnowledgeBase kb;
    kb.add({"e1", "Acma Furniture, LLC", "makes chairs and tables", "retail"});
    kb.add({"e2", "Lumier", "LED lighting", "energy"});
    kb.add({"e3", "Lumier", "photo sharing app", "software"});
    kb.add({"e4", "Bare", "", ""});

    auto first = temp_path("rt1");
    auto second = temp_path("rt2");
    save_kb(kb, first);
    auto loaded = load_kb(first);

    REQUIRE(loaded.size() == kb.size());
    for (std::size_t i = 0; i < kb.size(); ++i) {
        CHECK(loaded.at(i).id == kb.at(i).id);
        CHECK(loaded.at(i).name == kb.at(i).name);
        CHECK(loaded.at(i).description == kb.at(i).description);
        CHECK(loaded.at(i).industry == kb.at(i).industry);
    }

    save_kb(loaded, second);
    CHECK(slurp(first) == slurp(second));
    std::filesystem::remove(first);
    std::filesystem::remove(second);
}

TEST_CASE("name index buckets sum to the entity count") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> name_pick(0, 9);
    for (int iter = 0; iter < 20; ++iter) {
        KnowledgeBase kb;
        int n = 1 + static_cast<int>(rng() % 50);
        for (int i = 0; i < n; ++i)
            kb.add({"e" + std::to_string(i), "Name" + std::to_string(name_pick(rng)), "", ""});
        CHECK(kb.name_index_entries() == kb.size());
    }
}

TEST_CASE("loader reports the offending line") {
    auto path = temp_path("bad");

    write_file(path, "e1\tAcma\tok\n\tMissingId\tfields\n");
    CHECK_THROWS_WITH_AS(load_kb(path), doctest::Contains("line 2"), ParseError);

    write_file(path, "only-one-field\n");
    CHECK_THROWS_WITH_AS(load_kb(path), doctest::Contains("line 1"), ParseError);

    write_file(path, "e1\tAcma\tok\ne1\tAgain\tdup\n");
    CHECK_THROWS_WITH_AS(load_kb(path), doctest::Contains("e1"), ParseError);

    CHECK_THROWS_AS(load_kb(temp_path("missing_file")), ParseError);
    std::filesystem::remove(path);
}
