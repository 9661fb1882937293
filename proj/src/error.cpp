// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/error.hpp"

namespace metamaint {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::SenderMismatch: return "SenderMismatch";
    case ErrorCode::InvalidSignature: return "InvalidSignature";
    case ErrorCode::BadNonce: return "BadNonce";
    case ErrorCode::NotProposer: return "NotProposer";
    case ErrorCode::BadParent: return "BadParent";
    case ErrorCode::BadProposer: return "BadProposer";
    case ErrorCode::InvalidTxInBlock: return "InvalidTxInBlock";
    case ErrorCode::ScenarioOutOfRange: return "ScenarioOutOfRange";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownDestination: return "UnknownDestination";
    case ErrorCode::UnknownContract: return "UnknownContract";
    case ErrorCode::UnknownSelector: return "UnknownSelector";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::InsufficientFunds: return "InsufficientFunds";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotOwner: return "NotOwner";
    case ErrorCode::NonMonotonicVersion: return "NonMonotonicVersion";
    case ErrorCode::DuplicateVersion: return "DuplicateVersion";
    case ErrorCode::UnknownVersion: return "UnknownVersion";
    case ErrorCode::LicenseIncompatible: return "LicenseIncompatible";
    case ErrorCode::RuleViolation: return "RuleViolation";
    case ErrorCode::DigestMismatch: return "DigestMismatch";
    case ErrorCode::NoAuthorization: return "NoAuthorization";
    case ErrorCode::UnknownUpstream: return "UnknownUpstream";
    case ErrorCode::UnknownLicense: return "UnknownLicense";
    case ErrorCode::UnknownRelease: return "UnknownRelease";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::NotAuthorized: return "NotAuthorized";
    case ErrorCode::AlreadyResolved: return "AlreadyResolved";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::WindowClosed: return "WindowClosed";
    case ErrorCode::UnknownProposal: return "UnknownProposal";
    case ErrorCode::UnknownIssue: return "UnknownIssue";
    case ErrorCode::UnknownQuery: return "UnknownQuery";
    case ErrorCode::MissingDump: return "MissingDump";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace metamaint
