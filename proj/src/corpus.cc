//
// Copyright 2026 The itrbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "itrbench/corpus.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "itrbench/error.h"
#include "json.hpp"

namespace itrbench {
namespace {

using nlohmann::json;

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

// Maps a file-level split label onto the selector space. "restval" is the
// Karpathy remainder of the validation set that is conventionally trained on.
std::optional<Split> FileSplit(std::string_view label) {
  if (label == "train" || label == "restval") return Split::kTrain;
  if (label == "val" || label == "validation") return Split::kValidation;
  if (label == "test") return Split::kTest;
  return std::nullopt;
}

// imgid / sentid may be numbers or strings.
std::optional<std::string> IdField(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (it->is_number_unsigned()) return std::to_string(it->get<uint64_t>());
  if (it->is_number_integer()) return std::to_string(it->get<int64_t>());
  if (it->is_string()) return it->get<std::string>();
  throw Error(ErrorCode::kParse, std::string("field '") + key +
                                     "' must be a number or a string");
}

json IdValue(const std::string& id) {
  const bool numeric = !id.empty() && id.size() <= 18 &&
                       id.find_first_not_of("0123456789") == std::string::npos &&
                       (id.size() == 1 || id[0] != '0');
  if (numeric) return json(std::stoull(id));
  return json(id);
}

std::string ImageLabel(const json& image, size_t position) {
  if (auto it = image.find("filename"); it != image.end() && it->is_string()) {
    return it->get<std::string>();
  }
  return "#" + std::to_string(position);
}

}  // namespace

Split ParseSplit(std::string_view selector) {
  if (selector == "train") return Split::kTrain;
  if (selector == "val" || selector == "validation") return Split::kValidation;
  if (selector == "test") return Split::kTest;
  throw Error(ErrorCode::kUsage,
              "unknown split selector '" + std::string(selector) +
                  "' (expected train, val or test)");
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "val";
    case Split::kTest:
      return "test";
  }
  return "unknown";
}

std::string_view DirectionName(Direction direction) {
  return direction == Direction::kImageToText ? "i2t" : "t2i";
}

Corpus::Corpus(std::string dataset_name, Split split,
               std::vector<ImageTextTuple> tuples)
    : dataset_name_(std::move(dataset_name)),
      split_(split),
      tuples_(std::move(tuples)) {
  caption_ranges_.reserve(tuples_.size());
  for (size_t i = 0; i < tuples_.size(); ++i) {
    const ImageTextTuple& tuple = tuples_[i];
    if (!image_index_.emplace(tuple.image_id, i).second) {
      throw Error(ErrorCode::kInvalid,
                  "duplicate image id '" + tuple.image_id + "'");
    }
    if (tuple.captions.empty()) {
      throw Error(ErrorCode::kInvalid,
                  "image '" + tuple.image_id + "' has no captions");
    }
    const size_t first = caption_owner_.size();
    for (const Caption& caption : tuple.captions) {
      if (caption.image_id != tuple.image_id) {
        throw Error(ErrorCode::kInvalid, "caption '" + caption.caption_id +
                                             "' is filed under image '" +
                                             tuple.image_id + "'");
      }
      if (!caption_index_.emplace(caption.caption_id, caption_owner_.size())
               .second) {
        throw Error(ErrorCode::kInvalid,
                    "duplicate caption id '" + caption.caption_id + "'");
      }
      caption_owner_.push_back(i);
    }
    caption_ranges_.emplace_back(first, caption_owner_.size());
  }
}

bool Corpus::HasImage(std::string_view image_id) const {
  return image_index_.contains(std::string(image_id));
}

bool Corpus::HasCaption(std::string_view caption_id) const {
  return caption_index_.contains(std::string(caption_id));
}

size_t Corpus::ImageIndex(std::string_view image_id) const {
  auto it = image_index_.find(std::string(image_id));
  if (it == image_index_.end()) {
    throw Error(ErrorCode::kLookup,
                "unknown image id '" + std::string(image_id) + "'");
  }
  return it->second;
}

size_t Corpus::CaptionIndex(std::string_view caption_id) const {
  auto it = caption_index_.find(std::string(caption_id));
  if (it == caption_index_.end()) {
    throw Error(ErrorCode::kLookup,
                "unknown caption id '" + std::string(caption_id) + "'");
  }
  return it->second;
}

std::vector<std::string> Corpus::GroundTruth(std::string_view query_id,
                                             Direction direction) const {
  std::vector<std::string> relevant;
  if (direction == Direction::kImageToText) {
    const ImageTextTuple& tuple = tuples_[ImageIndex(query_id)];
    relevant.reserve(tuple.captions.size());
    for (const Caption& caption : tuple.captions) {
      relevant.push_back(caption.caption_id);
    }
  } else {
    relevant.push_back(
        tuples_[caption_owner_[CaptionIndex(query_id)]].image_id);
  }
  return relevant;
}

Corpus ParseAnnotations(std::string_view json_text, Split split,
                        std::string_view fallback_dataset_name) {
  json document;
  try {
    document = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, "malformed annotation document at byte " +
                                       std::to_string(e.byte) + ": " +
                                       e.what());
  }
  if (!document.is_object()) {
    throw Error(ErrorCode::kParse,
                "annotation document must be a JSON object at byte 0");
  }
  auto images = document.find("images");
  if (images == document.end() || !images->is_array()) {
    throw Error(ErrorCode::kParse,
                "annotation document has no top-level 'images' array");
  }

  std::string dataset_name(fallback_dataset_name);
  if (auto it = document.find("dataset"); it != document.end() &&
                                           it->is_string()) {
    dataset_name = it->get<std::string>();
  }

  std::vector<ImageTextTuple> tuples;
  std::vector<std::string> warnings;
  size_t unknown_split_count = 0;
  for (size_t position = 0; position < images->size(); ++position) {
    const json& image = (*images)[position];
    if (!image.is_object()) {
      throw Error(ErrorCode::kParse,
                  "images[" + std::to_string(position) + "] is not an object");
    }
    auto split_field = image.find("split");
    if (split_field == image.end() || !split_field->is_string()) {
      throw Error(ErrorCode::kParse, "image " + ImageLabel(image, position) +
                                         " has no 'split' string");
    }
    const std::optional<Split> image_split =
        FileSplit(split_field->get<std::string>());
    if (!image_split) {
      ++unknown_split_count;
      continue;
    }
    if (*image_split != split) continue;

    auto filename = image.find("filename");
    if (filename == image.end() || !filename->is_string()) {
      throw Error(ErrorCode::kParse, "images[" + std::to_string(position) +
                                         "] has no 'filename' string");
    }
    ImageTextTuple tuple;
    tuple.image_uri = filename->get<std::string>();
    if (auto filepath = image.find("filepath");
        filepath != image.end() && filepath->is_string() &&
        !filepath->get<std::string>().empty()) {
      tuple.image_uri = filepath->get<std::string>() + "/" + tuple.image_uri;
    }
    tuple.image_id = IdField(image, "imgid").value_or(tuple.image_uri);

    auto sentences = image.find("sentences");
    if (sentences == image.end() || !sentences->is_array() ||
        sentences->empty()) {
      throw Error(ErrorCode::kParse, "image '" + tuple.image_id +
                                         "' has no 'sentences' entries");
    }
    for (size_t ordinal = 0; ordinal < sentences->size(); ++ordinal) {
      const json& sentence = (*sentences)[ordinal];
      Caption caption;
      caption.image_id = tuple.image_id;
      caption.caption_id = IdField(sentence, "sentid")
                               .value_or(tuple.image_id + "#" +
                                         std::to_string(ordinal));
      if (auto raw = sentence.find("raw");
          raw != sentence.end() && raw->is_string()) {
        caption.text = raw->get<std::string>();
      } else if (auto tokens = sentence.find("tokens");
                 tokens != sentence.end() && tokens->is_array()) {
        for (const json& token : *tokens) {
          if (!token.is_string()) {
            throw Error(ErrorCode::kParse,
                        "non-string token in caption '" + caption.caption_id +
                            "'");
          }
          if (!caption.text.empty()) caption.text += ' ';
          caption.text += token.get<std::string>();
        }
      } else {
        throw Error(ErrorCode::kParse, "caption '" + caption.caption_id +
                                           "' has neither 'raw' nor 'tokens'");
      }
      if (Trim(caption.text).empty()) {
        throw Error(ErrorCode::kParse,
                    "caption '" + caption.caption_id + "' is empty");
      }
      tuple.captions.push_back(std::move(caption));
    }
    if (tuple.captions.size() != 5) {
      warnings.push_back("image '" + tuple.image_id + "' has " +
                         std::to_string(tuple.captions.size()) +
                         " captions (expected 5)");
    }
    tuples.push_back(std::move(tuple));
  }

  if (tuples.empty()) {
    throw Error(ErrorCode::kUsage, "split '" + std::string(SplitName(split)) +
                                       "' selects no images");
  }
  Corpus corpus = [&] {
    try {
      return Corpus(std::move(dataset_name), split, std::move(tuples));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, e.what());
    }
  }();
  if (unknown_split_count > 0) {
    corpus.AddWarning(std::to_string(unknown_split_count) +
                      " images carry an unrecognized split label");
  }
  for (std::string& warning : warnings) corpus.AddWarning(std::move(warning));
  return corpus;
}

Corpus LoadAnnotations(const std::string& path, Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open annotation file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseAnnotations(buffer.str(), split,
                          std::filesystem::path(path).stem().string());
}

nlohmann::json AnnotationsToJson(const Corpus& corpus) {
  json images = json::array();
  for (const ImageTextTuple& tuple : corpus.tuples()) {
    json sentences = json::array();
    for (const Caption& caption : tuple.captions) {
      sentences.push_back(
          {{"raw", caption.text}, {"sentid", IdValue(caption.caption_id)}});
    }
    images.push_back({{"filename", tuple.image_uri},
                      {"imgid", IdValue(tuple.image_id)},
                      {"split", SplitName(corpus.split())},
                      {"sentences", std::move(sentences)}});
  }
  return json{{"dataset", corpus.dataset_name()}, {"images", std::move(images)}};
}

}  // namespace itrbench
