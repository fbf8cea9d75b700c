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

#ifndef ITRBENCH_CORPUS_H_
#define ITRBENCH_CORPUS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

namespace itrbench {

enum class Split { kTrain, kValidation, kTest };

// Accepts "train", "val"/"validation" and "test". Throws kUsage otherwise.
Split ParseSplit(std::string_view selector);
std::string_view SplitName(Split split);

enum class Direction { kImageToText, kTextToImage };

std::string_view DirectionName(Direction direction);  // "i2t" / "t2i"

struct Caption {
  std::string caption_id;
  std::string image_id;
  std::string text;
};

struct ImageTextTuple {
  std::string image_id;
  std::string image_uri;  // opaque, never opened
  std::vector<Caption> captions;
};

// An immutable, split-filtered image-caption dataset.
class Corpus {
 public:
  Corpus(std::string dataset_name, Split split,
         std::vector<ImageTextTuple> tuples);

  const std::string& dataset_name() const { return dataset_name_; }
  Split split() const { return split_; }
  const std::vector<ImageTextTuple>& tuples() const { return tuples_; }

  size_t image_count() const { return tuples_.size(); }
  size_t caption_count() const { return caption_owner_.size(); }

  // Captions flattened in file order; i < caption_count().
  const Caption& caption(size_t i) const {
    const auto [first, last] = caption_ranges_[caption_owner_[i]];
    return tuples_[caption_owner_[i]].captions[i - first];
  }

  bool HasImage(std::string_view image_id) const;
  bool HasCaption(std::string_view caption_id) const;

  // Index of the image / caption in corpus order; throws kLookup.
  size_t ImageIndex(std::string_view image_id) const;
  size_t CaptionIndex(std::string_view caption_id) const;

  // Relevant candidate ids for a query: the owned captions for i2t, the
  // owning image for t2i. Throws kLookup for unknown ids.
  std::vector<std::string> GroundTruth(std::string_view query_id,
                                       Direction direction) const;

  // Same relation expressed over corpus indices; used by the evaluator.
  size_t OwnerImageIndex(size_t caption_index) const {
    return caption_owner_[caption_index];
  }
  // [first, last) caption indices of an image.
  std::pair<size_t, size_t> CaptionRange(size_t image_index) const {
    return caption_ranges_[image_index];
  }

  // Non-fatal anomalies found at load time (e.g. images without 5 captions).
  const std::vector<std::string>& warnings() const { return warnings_; }
  void AddWarning(std::string warning) {
    warnings_.push_back(std::move(warning));
  }

 private:
  std::string dataset_name_;
  Split split_;
  std::vector<ImageTextTuple> tuples_;
  std::vector<size_t> caption_owner_;
  std::vector<std::pair<size_t, size_t>> caption_ranges_;
  std::unordered_map<std::string, size_t> image_index_;
  std::unordered_map<std::string, size_t> caption_index_;
  std::vector<std::string> warnings_;
};

// Loads a Karpathy-style annotation document and keeps the images whose
// split matches `split`. The file-level "restval" split counts as train.
//
// Image ids come from `imgid` when present, else from the image locator.
// Caption ids come from `sentid` when present, else "<image_id>#<ordinal>".
Corpus LoadAnnotations(const std::string& path, Split split);
Corpus ParseAnnotations(std::string_view json_text, Split split,
                        std::string_view fallback_dataset_name);

// Builds an annotation document for the corpus. Reloading its dump with the
// same split yields an identical corpus.
nlohmann::json AnnotationsToJson(const Corpus& corpus);

}  // namespace itrbench

#endif  // ITRBENCH_CORPUS_H_
