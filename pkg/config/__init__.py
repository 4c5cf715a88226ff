from .settings import Config, DevelopmentConfig, ExperimentConfig, ProductionConfig, TestingConfig, config

__all__ = ['Config', 'DevelopmentConfig', 'ExperimentConfig', 'ProductionConfig', 'TestingConfig', 'config']
