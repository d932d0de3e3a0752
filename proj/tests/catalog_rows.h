/* Copyright 2026 The seqbatch Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
// Expected accuracy cells of the shipped seed catalog, one entry per model
// row with the toolkit value and the external reference value ("N.A." when
// there is none). Multi-metric cells are written "F1/EM".
#ifndef SEQBATCH_TESTS_CATALOG_ROWS_H_
#define SEQBATCH_TESTS_CATALOG_ROWS_H_

#include <array>

namespace seqbatch::testing {

struct CatalogRow {
  const char* task;
  const char* dataset;
  const char* model;
  const char* measure;
  const char* toolkit;
  const char* external;
  const char* citation;
};

inline constexpr std::array<CatalogRow, 13> kCatalogRows = {{
    {"Image Classification", "ImageNet", "ResNet-50", "top-1 acc.", "79.2",
     "75.3", "a"},
    {"Image Classification", "ImageNet", "ResNet-101", "top-1 acc.", "80.5",
     "76.4", "a"},
    {"Image Classification", "ImageNet", "MobileNet 1.0", "top-1 acc.", "73.3",
     "70.9", "b"},
    {"Object Detection", "COCO", "Faster R-CNN", "mAP", "40.1", "39.6", "c"},
    {"Instance Segmentation", "COCO", "Mask R-CNN", "mask AP", "33.1", "32.8",
     "c"},
    {"Pose Estimation", "COCO", "Simple Pose (f)", "OKS AP", "74.2", "N.A.",
     ""},
    {"Action Recognition", "Kinetics400", "I3D ResNet-50", "top-1 acc.",
     "74.0", "72.9", "f"},
    {"Sentiment Analysis", "TREC", "textCNN", "acc.", "92.8", "92.2", "e"},
    {"Sentiment Analysis", "SST-2", "BERT_BASE", "acc.", "93.0", "92.7", "e"},
    {"Question Answering", "SQuAD 1.1", "BERT_BASE", "F1/EM", "88.5/81.0",
     "88.5/80.8", "e"},
    {"Question Answering", "SQuAD 1.1", "BERT_LARGE", "F1/EM", "91.0/84.1",
     "90.9/84.1", "e"},
    {"Natural Language Inference", "MNLI-m", "BERT_BASE", "acc.", "84.6",
     "84.4", "e"},
    {"Paraphrasing", "MRPC", "BERT_BASE", "acc.", "88.7", "86.7", "e"},
}};

}  // namespace seqbatch::testing

#endif  // SEQBATCH_TESTS_CATALOG_ROWS_H_
