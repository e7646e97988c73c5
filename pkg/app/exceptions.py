# /app/exceptions.py
# title: シミュレータ カスタム例外
# role: 環境・学習・解析・永続化の各層で使用されるカスタム例外を定義する。

class MacSimError(Exception):
    """シミュレータにおける一般的な基底例外クラス。"""
    pass

class ConfigurationError(MacSimError):
    """設定に問題がある場合に送出される例外。メッセージには問題のキー名を含める。"""
    pass

class EpisodeFinishedError(MacSimError):
    """終了済みのエピソードに対してstepが呼ばれた場合に送出される例外。"""
    pass

class EnvironmentContractError(MacSimError):
    """環境への入力 (共同行動ベクトルなど) が契約に違反している場合に送出される例外。"""
    pass

class LearningError(MacSimError):
    """Q学習の更新入力が不正な場合、または読み取り専用テーブルを更新しようとした場合に送出される例外。"""
    pass

class AnalysisError(MacSimError):
    """解析指標が定義できない入力に対して送出される例外。"""
    pass

class SnapshotError(MacSimError):
    """Qテーブルスナップショットの読み込みに失敗した場合に送出される例外。"""
    pass
