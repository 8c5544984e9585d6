#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nctk/error.h"
#include "nctk/lexres.h"

namespace {

using namespace nctk;

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("nctk_lexres_" + name);
  std::ofstream(p) << body;
  return p;
}

// 18 categories hold "point"; corn sits in convexity and food.
Thesaurus small_thesaurus() {
  std::string text = "250\tconvexity\tcorn bump\n298\tfood\tcorn wine bread\n";
  for (int i = 0; i < 18; ++i) {
    text += "p" + std::to_string(i) + "\tpoint sense\tpoint\n";
  }
  text += "400\tcontainers\tglass body cask\n";
  return parse_thesaurus(text);
}

TEST(SureNouns, DropsOneLetterWords) {
  auto p = temp_file("nouns1", "mountain\ngoat\na\n");
  auto s = load_sure_nouns(p);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains("mountain"));
  EXPECT_TRUE(s.contains("goat"));
  EXPECT_FALSE(s.contains("a"));
}

TEST(SureNouns, EmptyFileAndDuplicates) {
  EXPECT_TRUE(load_sure_nouns(temp_file("nouns2", "")).empty());
  EXPECT_EQ(load_sure_nouns(temp_file("nouns3", "goat\ngoat\nkid\n")).size(), 2u);
}

TEST(SureNouns, MissingFileIsResourceError) {
  EXPECT_THROW(load_sure_nouns("/nonexistent/dir/nouns.txt"), ResourceError);
}

TEST(Thesaurus, CategoriesOf) {
  auto t = small_thesaurus();
  auto c = t.categories_of("corn");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(t.category(c[0]).id, "250");
  EXPECT_EQ(t.category(c[1]).id, "298");
  EXPECT_TRUE(t.categories_of("zzz").empty());
}

TEST(Thesaurus, Ambiguity) {
  auto t = small_thesaurus();
  EXPECT_EQ(t.ambiguity("corn"), 2u);
  EXPECT_EQ(t.ambiguity("point"), 18u);
  EXPECT_THROW(t.ambiguity("zzz"), UnknownWordError);
  try {
    t.ambiguity("zzz");
  } catch (const UnknownWordError& e) {
    EXPECT_EQ(e.word(), "zzz");
  }
}

TEST(Thesaurus, LexicalIdentity) {
  std::vector<std::string> vocab = {"wine", "cask", "wine"};
  auto t = Thesaurus::lexical(vocab);
  EXPECT_EQ(t.mode(), SchemeMode::kLexical);
  EXPECT_EQ(t.category_count(), 2u);
  auto c = t.categories_of("wine");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(t.category(c[0]).id, "wine");
  EXPECT_EQ(t.ambiguity("cask"), 1u);
}

TEST(Thesaurus, Normalize) {
  auto t = small_thesaurus();
  EXPECT_EQ(t.normalize("glasses"), "glass");
  EXPECT_EQ(t.normalize("bodies"), "body");
  EXPECT_EQ(t.normalize("corn"), "corn");
  EXPECT_EQ(t.normalize("casks"), "cask");
  EXPECT_FALSE(t.normalize("zzz").has_value());
  EXPECT_EQ(t.resolve("casks").size(), 1u);
}

TEST(Thesaurus, CategorySizes) {
  auto t = small_thesaurus();
  EXPECT_EQ(t.category_size(*t.index_of("298")), 3u);
  EXPECT_EQ(t.category_size(*t.index_of("250")), 2u);
  EXPECT_FALSE(t.index_of("999").has_value());
}

TEST(Thesaurus, RejectsDuplicateIdAndEmptyCategory) {
  Thesaurus t;
  t.add_category("1", "a", {"x"});
  EXPECT_THROW(t.add_category("1", "b", {"y"}), ArgumentError);
  EXPECT_THROW(t.add_category("2", "c", {}), ArgumentError);
}

TEST(Thesaurus, BadLineIsInputError) {
  EXPECT_THROW(parse_thesaurus("1\tonly two\n"), InputError);
  EXPECT_THROW(parse_thesaurus("1\ta\tx\n1\tb\ty\n"), InputError);
}

TEST(Thesaurus, LoadFromFile) {
  auto p = temp_file("thes", "# comment\n10\tthings\tcask barrel\n11\tdrink\twine\n");
  auto t = load_thesaurus(p);
  EXPECT_EQ(t.category_count(), 2u);
  EXPECT_EQ(t.word_count(), 3u);
  EXPECT_TRUE(t.contains("barrel"));
}

TEST(SchemeMode, RoundTrip) {
  EXPECT_EQ(parse_scheme_mode(to_string(SchemeMode::kLexical)), SchemeMode::kLexical);
  EXPECT_EQ(parse_scheme_mode(to_string(SchemeMode::kConceptual)), SchemeMode::kConceptual);
  EXPECT_THROW(parse_scheme_mode("other"), ArgumentError);
}

}  // namespace
