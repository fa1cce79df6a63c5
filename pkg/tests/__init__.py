"""
OOK Rate Playground 테스트 패키지.

테스트 모듈 구조:
- test_photon_stats.py: 광자수 분포, g², 무검출 확률 테스트
- test_info_theory.py: 이진 엔트로피, OOK/PPM 상호정보량, 용량 한계 테스트
- test_analytic.py: Lambert W 및 해석적 최적해 테스트
- test_optimize.py: 수치 최적화 및 향상 비율 테스트
- test_montecarlo.py: Monte-Carlo 검증 테스트
- test_sweep.py: PIE 곡선·향상 비율 sweep 행 및 CSV 출력 테스트
- test_cli.py: CLI 서브커맨드 테스트
- test_config.py: sweep 설정 파싱 및 Settings 테스트
- test_logging.py: 로깅 데코레이터 테스트
- test_rate_server.py: MCP 도구 서버 테스트
- conftest.py: 공통 fixtures
"""
